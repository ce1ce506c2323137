//! Batch generation, preview and run statistics.
//!
//! Pages are generated in parallel in fixed-size chunks. Each worker writes
//! its page image and label file; the calling thread consumes the chunk's
//! results in index order and is the only writer of the COCO files, so
//! every output is independent of the worker count.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::time::Instant;

use docsynth_core::render::{render_page, Texture};
use docsynth_core::{
    compose_page, leaf_regions, ComponentKind, Encoding, PageAssets, PageError, PageParams, PageRecipe, PageStyle,
    RasterImage, TextCorpus, Typesetter,
};
use image::codecs::jpeg::JpegEncoder;
use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ExtendedColorType, ImageEncoder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotation::{emit_hierarchy, flatten, image_file_name, to_json_bytes, Level, PageLabel};
use crate::assets::{load_corpus, load_fonts, load_image_pool, load_texture, AssetError, ImageLibrary, LoadedFonts};
use crate::coco::{coco_file_name, CocoImage, CocoWriter};
use crate::config::GenerationConfig;
use crate::overlay::render_debug_overlay;
use crate::plan::{plan_job, plan_jobs};

/// Page count the throughput extrapolation targets.
pub const REFERENCE_PAGES: u64 = 320_000;

const IO_ATTEMPTS: usize = 3;
const PAGES_PER_WORKER_CHUNK: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum BatchError {
    #[error(transparent)]
    Asset(#[from] AssetError),
    #[error("image pool {0} is empty but the component mix asks for figures")]
    EmptyImagePool(PathBuf),
    #[error("cannot start worker pool: {0}")]
    Workers(String),
    #[error("page {index}: {source}")]
    Page { index: u64, source: PageError },
    #[error("write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{} page(s) failed; first: {}", .0.len(), .0[0])]
    Jobs(Vec<BatchError>),
}

/// Everything a page needs besides its recipe. Immutable once loaded.
pub struct Assets {
    pub corpus: TextCorpus,
    pub fonts: LoadedFonts,
    pub images: ImageLibrary,
    pub texture: Option<Texture>,
}

pub fn load_assets(config: &GenerationConfig) -> Result<Assets, BatchError> {
    let p = &config.paths;
    let corpus = load_corpus(&p.corpus, &config.language_tag)?;
    let fonts = load_fonts(&p.fonts)?;
    let images = load_image_pool(&p.image_pool)?;
    if images.is_empty() && config.component_mix.figure > 0.0 {
        return Err(BatchError::EmptyImagePool(p.image_pool.clone()));
    }
    let texture = p.background_texture.as_deref().map(load_texture).transpose()?;
    Ok(Assets {
        corpus,
        fonts,
        images,
        texture,
    })
}

/// Counters gathered while generating one page.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PageCounters {
    pub truncated: u64,
    pub kind_fallbacks: u64,
    pub missing_glyphs: u64,
    pub fallback_substitutions: u64,
}

pub struct PageOutput {
    pub label: PageLabel,
    pub image: RasterImage,
    pub counters: PageCounters,
}

/// Per-batch generation context.
pub struct Generator<'a> {
    pub params: PageParams,
    pub style: PageStyle,
    pub assets: &'a Assets,
    pub extension: &'static str,
}

impl<'a> Generator<'a> {
    pub fn new(config: &GenerationConfig, assets: &'a Assets) -> Self {
        Self {
            params: config.page_params(),
            style: PageStyle {
                background: config.background_color,
                texture: assets.texture.clone(),
                ruling_color: config.ruling_color,
                encoding: config.image_encoding(),
            },
            assets,
            extension: config.image_extension(),
        }
    }

    /// Lays out, fills and renders one page.
    pub fn page(&self, recipe: &PageRecipe, ts: &Typesetter<'_>) -> Result<PageOutput, PageError> {
        let (missing0, subst0) = (ts.missing_glyphs(), ts.fallback_substitutions());
        let assets = PageAssets {
            corpus: &self.assets.corpus,
            pool: &self.assets.images.pool,
        };
        let page = compose_page(recipe, &self.params, &assets, ts)?;
        let image = render_page(&recipe.spec, &self.style, &page.components, ts, &self.assets.images);
        let label = emit_hierarchy(
            &page,
            &image_file_name(recipe.index, self.extension),
            &self.assets.images.pool,
        );
        Ok(PageOutput {
            label,
            image,
            counters: PageCounters {
                truncated: page.stats.truncated,
                kind_fallbacks: page.stats.kind_fallbacks,
                missing_glyphs: ts.missing_glyphs() - missing0,
                fallback_substitutions: ts.fallback_substitutions() - subst0,
            },
        })
    }
}

pub fn encode_image(img: &RasterImage) -> Result<Vec<u8>, image::ImageError> {
    let mut out = Vec::new();
    match img.encoding {
        Encoding::Png => PngEncoder::new_with_quality(&mut out, CompressionType::Fast, FilterType::Sub).write_image(
            &img.pixels,
            img.width,
            img.height,
            ExtendedColorType::Rgb8,
        )?,
        Encoding::Jpeg { quality } => JpegEncoder::new_with_quality(&mut out, quality).write_image(
            &img.pixels,
            img.width,
            img.height,
            ExtendedColorType::Rgb8,
        )?,
    }
    Ok(out)
}

/// Writes `bytes`, retrying transient failures a bounded number of times.
fn write_file(path: &Path, bytes: &[u8]) -> Result<(), BatchError> {
    let mut last = None;
    for _ in 0..IO_ATTEMPTS {
        match fs::write(path, bytes) {
            Ok(()) => return Ok(()),
            Err(e) => last = Some(e),
        }
    }
    Err(BatchError::Io {
        path: path.to_path_buf(),
        source: last.expect("at least one attempt"),
    })
}

fn create_dir(path: &Path) -> Result<(), BatchError> {
    fs::create_dir_all(path).map_err(|source| BatchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// FNV-1a over 64-bit words of the pixel buffer; equal buffers give equal
/// digests.
pub fn pixel_digest(pixels: &[u8]) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01B3;
    let mut h = 0xCBF2_9CE4_8422_2325u64;
    let mut chunks = pixels.chunks_exact(8);
    for c in &mut chunks {
        h = (h ^ u64::from_le_bytes(c.try_into().expect("8 bytes"))).wrapping_mul(PRIME);
    }
    for &b in chunks.remainder() {
        h = (h ^ b as u64).wrapping_mul(PRIME);
    }
    h ^ pixels.len() as u64
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BatchStats {
    pub pages: u64,
    pub components_by_category: BTreeMap<String, u64>,
    pub records_by_level: BTreeMap<String, u64>,
    pub leaf_regions: u64,
    pub truncated_components: u64,
    pub kind_fallbacks: u64,
    pub missing_glyphs: u64,
    pub fallback_substitutions: u64,
    /// Order-sensitive digest of every page's pre-encoding pixels.
    pub pixel_digest: u64,
    pub wall_seconds: f64,
    pub pages_per_second: f64,
    /// Projected wall time for [`REFERENCE_PAGES`] pages at this rate.
    pub extrapolated_seconds_320k: f64,
}

impl BatchStats {
    pub fn total_components(&self) -> u64 {
        self.components_by_category.values().sum()
    }

    fn add_page(&mut self, label: &PageLabel, c: &PageCounters, leaves: u64, digest: u64) {
        self.pages += 1;
        for comp in &label.components {
            *self.components_by_category.entry(comp.category.clone()).or_default() += 1;
        }
        self.leaf_regions += leaves;
        self.truncated_components += c.truncated;
        self.kind_fallbacks += c.kind_fallbacks;
        self.missing_glyphs += c.missing_glyphs;
        self.fallback_substitutions += c.fallback_substitutions;
        self.pixel_digest = (self.pixel_digest.rotate_left(5) ^ digest).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }

    fn finish_timing(&mut self, seconds: f64) {
        self.wall_seconds = seconds;
        self.pages_per_second = if seconds > 0.0 { self.pages as f64 / seconds } else { 0.0 };
        self.extrapolated_seconds_320k = if self.pages_per_second > 0.0 {
            REFERENCE_PAGES as f64 / self.pages_per_second
        } else {
            0.0
        };
    }

    pub fn summary(&self) -> String {
        let cats: Vec<String> = self.components_by_category.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{} pages in {:.1}s ({:.2} pages/s; {} pages ≈ {:.1} h); components: {}; truncated {}, missing glyphs {}, \
             font fallbacks {}, kind fallbacks {}",
            self.pages,
            self.wall_seconds,
            self.pages_per_second,
            REFERENCE_PAGES,
            self.extrapolated_seconds_320k / 3600.0,
            cats.join(" "),
            self.truncated_components,
            self.missing_glyphs,
            self.fallback_substitutions,
            self.kind_fallbacks
        )
    }
}

struct JobResult {
    label: PageLabel,
    counters: PageCounters,
    leaves: u64,
    digest: u64,
}

fn run_job(
    gen: &Generator<'_>,
    recipe: &PageRecipe,
    ts: &Typesetter<'_>,
    images_dir: &Path,
    labels_dir: &Path,
) -> Result<JobResult, BatchError> {
    let out = gen.page(recipe, ts).map_err(|source| BatchError::Page {
        index: recipe.index,
        source,
    })?;
    let image_path = images_dir.join(&out.label.page.file_name);
    let encoded = encode_image(&out.image).map_err(|e| BatchError::Io {
        path: image_path.clone(),
        source: io::Error::other(e),
    })?;
    write_file(&image_path, &encoded)?;
    write_file(
        &labels_dir.join(image_file_name(recipe.index, "json")),
        &to_json_bytes(&out.label),
    )?;
    let leaves = out.label.layout_tree().map_or(0, |t| leaf_regions(&t).len() as u64);
    Ok(JobResult {
        digest: pixel_digest(&out.image.pixels),
        label: out.label,
        counters: out.counters,
        leaves,
    })
}

/// Generates `config.count` pages into `config.paths.outputDir`.
pub fn run_batch(config: &GenerationConfig, assets: &Assets) -> Result<BatchStats, BatchError> {
    let start = Instant::now();
    let out_dir = &config.paths.output_dir;
    let images_dir = out_dir.join("images");
    let labels_dir = out_dir.join("labels");
    create_dir(&images_dir)?;
    create_dir(&labels_dir)?;

    let plan = plan_jobs(config);
    let gen = Generator::new(config, assets);
    let coco_images: Vec<CocoImage> = plan
        .jobs
        .iter()
        .map(|r| CocoImage {
            id: r.index,
            file_name: image_file_name(r.index, gen.extension),
            width: r.spec.width,
            height: r.spec.height,
        })
        .collect();

    let mut writers = Vec::with_capacity(4);
    for level in Level::ALL {
        let path = out_dir.join(coco_file_name(level));
        let io_err = |source| BatchError::Io {
            path: path.clone(),
            source,
        };
        let file = fs::File::create(&path).map_err(io_err)?;
        writers.push((path.clone(), CocoWriter::new(BufWriter::new(file), level, &coco_images).map_err(io_err)?));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| BatchError::Workers(e.to_string()))?;
    let fonts = &assets.fonts.set;
    let mut stats = BatchStats::default();
    let mut failures = Vec::new();
    let mut next_id = 1u64;

    for chunk in plan.jobs.chunks(config.workers * PAGES_PER_WORKER_CHUNK) {
        let results: Vec<Result<JobResult, BatchError>> = pool.install(|| {
            chunk
                .par_iter()
                .map_init(
                    || Typesetter::new(fonts),
                    |ts, recipe| run_job(&gen, recipe, ts, &images_dir, &labels_dir),
                )
                .collect()
        });
        for result in results {
            let job = match result {
                Ok(job) => job,
                Err(e) => {
                    failures.push(e);
                    continue;
                }
            };
            let records = flatten(&job.label, &mut next_id);
            for ((path, writer), recs) in writers.iter_mut().zip(&records) {
                for r in recs {
                    writer.push(r).map_err(|source| BatchError::Io {
                        path: path.clone(),
                        source,
                    })?;
                }
            }
            stats.add_page(&job.label, &job.counters, job.leaves, job.digest);
        }
    }

    for (level, (path, writer)) in Level::ALL.into_iter().zip(writers) {
        stats.records_by_level.insert(level.name().to_string(), writer.count());
        writer.finish().map_err(|source| BatchError::Io { path, source })?;
    }
    if !failures.is_empty() {
        return Err(BatchError::Jobs(failures));
    }
    stats.finish_timing(start.elapsed().as_secs_f64());
    let stats_json = serde_json::to_vec_pretty(&stats).expect("stats serialize");
    write_file(&out_dir.join("stats.json"), &stats_json)?;
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreviewReport {
    pub page: PathBuf,
    /// Overlay file and number of boxes drawn, per level.
    pub overlays: Vec<(Level, PathBuf, usize)>,
}

/// Renders page `index` and one overlay per annotation level into
/// `{outputDir}/preview`.
pub fn cmd_preview(config: &GenerationConfig, assets: &Assets, index: u64) -> Result<PreviewReport, BatchError> {
    let dir = config.paths.output_dir.join("preview");
    create_dir(&dir)?;
    let gen = Generator::new(config, assets);
    let ts = Typesetter::new(&assets.fonts.set);
    let recipe = plan_job(config, index);
    let out = gen
        .page(&recipe, &ts)
        .map_err(|source| BatchError::Page { index, source })?;
    let write_png = |path: PathBuf, img: &RasterImage| -> Result<PathBuf, BatchError> {
        let mut img = img.clone();
        img.encoding = Encoding::Png;
        let bytes = encode_image(&img).map_err(|e| BatchError::Io {
            path: path.clone(),
            source: io::Error::other(e),
        })?;
        write_file(&path, &bytes)?;
        Ok(path)
    };
    let page = write_png(dir.join(image_file_name(index, "png")), &out.image)?;
    let records: Vec<_> = flatten(&out.label, &mut 1).into_iter().flatten().collect();
    let mut overlays = Vec::new();
    for level in Level::ALL {
        let n = records.iter().filter(|r| r.level == level).count();
        let img = render_debug_overlay(&out.image, &records, level);
        let path = write_png(dir.join(format!("{index:06}_{}.png", level.name())), &img)?;
        overlays.push((level, path, n));
    }
    Ok(PreviewReport { page, overlays })
}

/// Per-kind component totals, in category order.
pub fn category_counts(stats: &BatchStats) -> Vec<(ComponentKind, u64)> {
    ComponentKind::ALL
        .iter()
        .map(|k| (*k, stats.components_by_category.get(k.name()).copied().unwrap_or(0)))
        .collect()
}
