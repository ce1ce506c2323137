//! Page rasterization.
//!
//! Draw order is fixed: background, table rules, images, glyphs, each pass
//! walking components in order. Glyphs are blitted from the same cached
//! rasters that produced the character boxes.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::fill::{CharBox, ComponentInstance};
use crate::font::{FontId, MissingGlyph, Typesetter};
use crate::geom::Rect;
use crate::layout::PageSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Png,
    Jpeg { quality: u8 },
}

impl Encoding {
    pub fn jpeg(quality: u8) -> Result<Self, RenderError> {
        if (1..=100).contains(&quality) {
            Ok(Encoding::Jpeg { quality })
        } else {
            Err(RenderError::JpegQuality(quality))
        }
    }
}

/// RGB8 row-major pixel buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
    pub encoding: Encoding,
}

impl RasterImage {
    pub fn filled(width: u32, height: u32, color: [u8; 3]) -> Self {
        let mut pixels = vec![0u8; width as usize * height as usize * 3];
        for px in pixels.chunks_exact_mut(3) {
            px.copy_from_slice(&color);
        }
        Self {
            width,
            height,
            pixels,
            encoding: Encoding::Png,
        }
    }

    #[inline]
    fn offset(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * 3
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let o = self.offset(x, y);
        [self.pixels[o], self.pixels[o + 1], self.pixels[o + 2]]
    }

    pub fn put(&mut self, x: u32, y: u32, c: [u8; 3]) {
        let o = self.offset(x, y);
        self.pixels[o..o + 3].copy_from_slice(&c);
    }

    /// Alpha-blends `c` with coverage `a` (0..=255) over the current pixel.
    #[inline]
    fn blend(&mut self, x: u32, y: u32, c: [u8; 3], a: u8) {
        let o = self.offset(x, y);
        let a = a as u32;
        for i in 0..3 {
            let bg = self.pixels[o + i] as u32;
            self.pixels[o + i] = ((bg * (255 - a) + c[i] as u32 * a + 127) / 255) as u8;
        }
    }
}

/// A tileable background image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Texture {
    pub width: u32,
    pub height: u32,
    pub pixels: Arc<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageStyle {
    pub background: [u8; 3],
    pub texture: Option<Texture>,
    pub ruling_color: [u8; 3],
    pub encoding: Encoding,
}

impl Default for PageStyle {
    fn default() -> Self {
        Self {
            background: [255, 255, 255],
            texture: None,
            ruling_color: [40, 40, 40],
            encoding: Encoding::Png,
        }
    }
}

/// Supplies figure pixels scaled to a requested size.
pub trait ImageSource {
    /// RGB8 buffer of exactly `w * h * 3` bytes.
    fn scaled_rgb(&self, asset: usize, w: u32, h: u32) -> Vec<u8>;
}

/// For pages without figures.
pub struct NoImages;

impl ImageSource for NoImages {
    fn scaled_rgb(&self, _asset: usize, w: u32, h: u32) -> Vec<u8> {
        vec![0; w as usize * h as usize * 3]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error(transparent)]
    MissingGlyph(#[from] MissingGlyph),
    #[error("glyph ink falls outside the page at the given origin")]
    OutsidePage,
    #[error("jpeg quality {0} outside 1..=100")]
    JpegQuality(u8),
}

/// Ink-tight boxes of `text` set on one baseline with the pen starting at
/// `origin = (x, baseline_y)`. Whitespace yields no boxes.
pub fn measure_glyph_boxes(
    ts: &Typesetter<'_>,
    text: &str,
    font: FontId,
    size: u32,
    origin: (u32, u32),
) -> Result<Vec<CharBox>, RenderError> {
    let run = ts.shape(text, font, size)?;
    let page = Rect::new(0, 0, i32::MAX as u32, i32::MAX as u32);
    run.glyphs
        .iter()
        .filter_map(|g| g.ink.map(|b| (g, b)))
        .map(|(g, b)| {
            let bbox = b
                .translate(origin.0 as i32, origin.1 as i32)
                .to_rect_within(&page)
                .ok_or(RenderError::OutsidePage)?;
            Ok(CharBox {
                ch: g.ch,
                bbox,
                font: g.font,
            })
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Paint {
    Styled,
    /// Every inked pixel of component `i` gets `shadow_color(i)` at full strength.
    Shadow,
}

/// Unique flat color for component `i` in a shadow render.
pub fn shadow_color(i: usize) -> [u8; 3] {
    let v = (i + 1) as u32;
    [(v >> 16) as u8, (v >> 8) as u8, v as u8]
}

/// Inverse of [`shadow_color`]; `None` for the white background.
pub fn shadow_owner(c: [u8; 3]) -> Option<usize> {
    if c == [255, 255, 255] {
        return None;
    }
    let v = ((c[0] as u32) << 16) | ((c[1] as u32) << 8) | c[2] as u32;
    (v as usize).checked_sub(1)
}

fn stroke(img: &mut RasterImage, r: &Rect, color: [u8; 3]) {
    if r.is_empty() {
        return;
    }
    let (x1, y1) = (r.right() - 1, r.bottom() - 1);
    for x in r.x..=x1 {
        img.put(x, r.y, color);
        img.put(x, y1, color);
    }
    for y in r.y..=y1 {
        img.put(r.x, y, color);
        img.put(x1, y, color);
    }
}

fn draw_background(img: &mut RasterImage, style: &PageStyle) {
    let Some(tex) = &style.texture else {
        return;
    };
    if tex.width == 0 || tex.height == 0 {
        return;
    }
    for y in 0..img.height {
        let ty = (y % tex.height) as usize;
        for x in 0..img.width {
            let o = (ty * tex.width as usize + (x % tex.width) as usize) * 3;
            img.put(x, y, [tex.pixels[o], tex.pixels[o + 1], tex.pixels[o + 2]]);
        }
    }
}

fn paint(
    spec: &PageSpec,
    style: &PageStyle,
    components: &[ComponentInstance],
    ts: &Typesetter<'_>,
    images: &dyn ImageSource,
    mode: Paint,
) -> RasterImage {
    let bg = match mode {
        Paint::Styled => style.background,
        Paint::Shadow => [255, 255, 255],
    };
    let mut img = RasterImage::filled(spec.width, spec.height, bg);
    img.encoding = style.encoding;
    if let Paint::Styled = mode {
        draw_background(&mut img, style);
    }

    for (i, c) in components.iter().enumerate() {
        if let Some(table) = &c.table {
            let color = match mode {
                Paint::Styled => style.ruling_color,
                Paint::Shadow => shadow_color(i),
            };
            for r in &table.ruling {
                stroke(&mut img, r, color);
            }
        }
    }

    for (i, c) in components.iter().enumerate() {
        let Some(placed) = &c.image else { continue };
        let r = placed.rect;
        let src = match mode {
            Paint::Styled => images.scaled_rgb(placed.asset, r.w, r.h),
            Paint::Shadow => Vec::new(),
        };
        for y in 0..r.h {
            for x in 0..r.w {
                let color = match mode {
                    Paint::Styled => {
                        let o = (y as usize * r.w as usize + x as usize) * 3;
                        [src[o], src[o + 1], src[o + 2]]
                    }
                    Paint::Shadow => shadow_color(i),
                };
                img.put(r.x + x, r.y + y, color);
            }
        }
    }

    for (i, c) in components.iter().enumerate() {
        let Some(text_style) = &c.style else { continue };
        let (color, shadow) = match mode {
            Paint::Styled => (text_style.color, false),
            Paint::Shadow => (shadow_color(i), true),
        };
        for ch in c.lines.iter().flat_map(|l| &l.words).flat_map(|w| &w.chars) {
            let g = ts.glyph(ch.font, ch.ch, text_style.font_size);
            debug_assert_eq!((g.width, g.height), (ch.bbox.w, ch.bbox.h));
            for gy in 0..g.height {
                let row = &g.coverage[(gy * g.width) as usize..((gy + 1) * g.width) as usize];
                for (gx, &a) in row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let (x, y) = (ch.bbox.x + gx as u32, ch.bbox.y + gy);
                    if shadow {
                        img.put(x, y, color);
                    } else {
                        img.blend(x, y, color, a);
                    }
                }
            }
        }
    }
    img
}

/// Renders the page. Output is a pure function of the inputs.
pub fn render_page(
    spec: &PageSpec,
    style: &PageStyle,
    components: &[ComponentInstance],
    ts: &Typesetter<'_>,
    images: &dyn ImageSource,
) -> RasterImage {
    paint(spec, style, components, ts, images, Paint::Styled)
}

/// Ownership render: white background, every inked pixel of component `i`
/// painted flat in [`shadow_color`]`(i)`.
pub fn render_shadow(
    spec: &PageSpec,
    components: &[ComponentInstance],
    ts: &Typesetter<'_>,
) -> RasterImage {
    paint(spec, &PageStyle::default(), components, ts, &NoImages, Paint::Shadow)
}

/// Copy of `image` with each rect outlined (1 px) in its color.
pub fn stroke_rects(image: &RasterImage, rects: &[(Rect, [u8; 3])]) -> RasterImage {
    let mut out = image.clone();
    let bounds = Rect::new(0, 0, image.width, image.height);
    for (r, c) in rects {
        if bounds.contains(r) {
            stroke(&mut out, r, *c);
        }
    }
    out
}
