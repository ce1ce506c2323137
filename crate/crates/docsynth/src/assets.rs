//! Filesystem loaders for corpora, fonts, figure images and textures.
//!
//! Directory listings are sorted by file name so that asset indices, and
//! therefore generated pages, do not depend on filesystem order.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use docsynth_core::corpus::CorpusError;
use docsynth_core::render::Texture;
use docsynth_core::{FontFace, FontSet, ImageAsset, ImagePool, ImageSource, TextCorpus};
use image::imageops::FilterType;
use image::RgbImage;

#[derive(Debug, thiserror::Error)]
pub enum AssetError {
    #[error("{}: {source}", location(path, source.line()))]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("no usable font in {dir}{}", list_skipped(skipped))]
    NoFonts { dir: PathBuf, skipped: Vec<SkippedFont> },
    #[error("cannot decode image {path}: {message}")]
    Image { path: PathBuf, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn location(path: &Path, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{}:{l}", path.display()),
        None => path.display().to_string(),
    }
}

fn list_skipped(skipped: &[SkippedFont]) -> String {
    skipped.iter().map(|s| format!("; skipped {}: {}", s.path.display(), s.reason)).collect()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> AssetError + '_ {
    move |source| AssetError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn sorted_files(dir: &Path) -> Result<Vec<PathBuf>, AssetError> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// One sentence per line; blank lines are dropped.
pub fn load_corpus(path: &Path, language_tag: &str) -> Result<TextCorpus, AssetError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    TextCorpus::parse(&bytes, language_tag).map_err(|source| AssetError::Corpus {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFont {
    pub path: PathBuf,
    pub reason: String,
}

pub struct LoadedFonts {
    pub set: FontSet,
    /// Files that did not load; reported, not fatal.
    pub skipped: Vec<SkippedFont>,
}

const FONT_EXTENSIONS: [&str; 3] = ["ttf", "otf", "ttc"];

fn has_extension(path: &Path, exts: &[&str]) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| exts.iter().any(|x| x.eq_ignore_ascii_case(e)))
}

/// Loads every font file in `dir`. Fails only if none loads.
pub fn load_fonts(dir: &Path) -> Result<LoadedFonts, AssetError> {
    let mut faces = Vec::new();
    let mut skipped = Vec::new();
    for path in sorted_files(dir)?.into_iter().filter(|p| has_extension(p, &FONT_EXTENSIONS)) {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let result = std::fs::read(&path)
            .map_err(|e| e.to_string())
            .and_then(|bytes| FontFace::parse(&bytes, &name).map_err(|e| e.to_string()));
        match result {
            Ok(face) => faces.push(face),
            Err(reason) => skipped.push(SkippedFont { path, reason }),
        }
    }
    match FontSet::new(faces) {
        Ok(set) => Ok(LoadedFonts { set, skipped }),
        Err(_) => Err(AssetError::NoFonts {
            dir: dir.to_path_buf(),
            skipped,
        }),
    }
}

/// Figure assets with their decoded pixels.
#[derive(Debug, Clone, Default)]
pub struct ImageLibrary {
    pub pool: ImagePool,
    pixels: Vec<RgbImage>,
}

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

impl ImageLibrary {
    pub fn from_images(named: Vec<(String, RgbImage)>) -> Self {
        let pool = ImagePool {
            assets: named
                .iter()
                .map(|(name, img)| ImageAsset {
                    name: name.clone(),
                    width: img.width(),
                    height: img.height(),
                })
                .collect(),
        };
        Self {
            pool,
            pixels: named.into_iter().map(|(_, img)| img).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }
}

impl ImageSource for ImageLibrary {
    fn scaled_rgb(&self, asset: usize, w: u32, h: u32) -> Vec<u8> {
        let src = &self.pixels[asset];
        if src.dimensions() == (w, h) {
            return src.as_raw().clone();
        }
        image::imageops::resize(src, w, h, FilterType::Triangle).into_raw()
    }
}

fn decode(path: &Path) -> Result<RgbImage, AssetError> {
    image::open(path)
        .map(|img| img.to_rgb8())
        .map_err(|e| AssetError::Image {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}

/// Decodes every raster image in `dir`. Files with other extensions are
/// ignored; an image that fails to decode is an error.
pub fn load_image_pool(dir: &Path) -> Result<ImageLibrary, AssetError> {
    let mut named = Vec::new();
    for path in sorted_files(dir)?.into_iter().filter(|p| has_extension(p, &IMAGE_EXTENSIONS)) {
        let img = decode(&path)?;
        if img.width() == 0 || img.height() == 0 {
            return Err(AssetError::Image {
                path,
                message: "zero-sized image".into(),
            });
        }
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        named.push((name, img));
    }
    Ok(ImageLibrary::from_images(named))
}

pub fn load_texture(path: &Path) -> Result<Texture, AssetError> {
    let img = decode(path)?;
    Ok(Texture {
        width: img.width(),
        height: img.height(),
        pixels: Arc::new(img.into_raw()),
    })
}
