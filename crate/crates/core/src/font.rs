//! Font faces, fallback resolution and the shared glyph raster cache.
//!
//! Every glyph that is measured or drawn goes through [`Typesetter::glyph`],
//! so the ink boxes recorded as annotations are exactly the coverage bitmaps
//! the renderer blends onto the page.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use crate::geom::IBox;

/// Index of a face inside a [`FontSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FontId(pub u16);

pub struct FontFace {
    family: String,
    bold: bool,
    source: String,
    font: fontdue::Font,
}

impl core::fmt::Debug for FontFace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FontFace")
            .field("family", &self.family)
            .field("bold", &self.bold)
            .field("source", &self.source)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FontError {
    #[error("{file}: not a parseable font ({reason})")]
    Unparseable { file: String, reason: String },
    #[error("{file}: font maps no characters")]
    NoCoverage { file: String },
    #[error("no usable fonts")]
    NoFonts,
}

fn decode_name(name: &ttf_parser::name::Name<'_>) -> Option<String> {
    if !name.is_unicode() {
        return None;
    }
    let units = name.name.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]]));
    char::decode_utf16(units).collect::<Result<String, _>>().ok()
}

impl FontFace {
    /// Parses a font file. `source` names it in errors and reports.
    pub fn parse(bytes: &[u8], source: &str) -> Result<Self, FontError> {
        let face = ttf_parser::Face::parse(bytes, 0).map_err(|e| FontError::Unparseable {
            file: source.into(),
            reason: alloc::format!("{e}"),
        })?;
        let names: Vec<_> = face.names().into_iter().collect();
        let pick = |id: u16| names.iter().filter(|n| n.name_id == id).find_map(decode_name);
        let family = pick(ttf_parser::name_id::TYPOGRAPHIC_FAMILY)
            .or_else(|| pick(ttf_parser::name_id::FAMILY))
            .unwrap_or_else(|| source.into());
        let bold = face.is_bold();
        let font = fontdue::Font::from_bytes(bytes, fontdue::FontSettings::default()).map_err(|e| {
            FontError::Unparseable {
                file: source.into(),
                reason: e.into(),
            }
        })?;
        if font.chars().is_empty() {
            return Err(FontError::NoCoverage { file: source.into() });
        }
        Ok(Self {
            family,
            bold,
            source: source.into(),
            font,
        })
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn is_bold(&self) -> bool {
        self.bold
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn covers(&self, ch: char) -> bool {
        self.font.chars().contains_key(&ch)
    }

    /// Codepoints mapped by the font's character map, ascending.
    pub fn coverage(&self) -> Vec<char> {
        let mut v: Vec<char> = self.font.chars().keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn units_per_em(&self) -> f32 {
        self.font.units_per_em()
    }
}

/// The loaded faces, in load order.
#[derive(Debug)]
pub struct FontSet {
    faces: Vec<FontFace>,
    families: Vec<String>,
}

impl FontSet {
    pub fn new(faces: Vec<FontFace>) -> Result<Self, FontError> {
        if faces.is_empty() {
            return Err(FontError::NoFonts);
        }
        let mut families: Vec<String> = Vec::new();
        for f in &faces {
            if !families.iter().any(|x| x == &f.family) {
                families.push(f.family.clone());
            }
        }
        Ok(Self { faces, families })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FontId) -> &FontFace {
        &self.faces[id.0 as usize]
    }

    pub fn faces(&self) -> impl Iterator<Item = (FontId, &FontFace)> {
        self.faces.iter().enumerate().map(|(i, f)| (FontId(i as u16), f))
    }

    /// Distinct family names in load order.
    pub fn families(&self) -> &[String] {
        &self.families
    }

    /// Face of `family`, preferring the requested weight.
    pub fn face_for(&self, family: &str, bold: bool) -> Option<FontId> {
        let mut fallback = None;
        for (id, f) in self.faces() {
            if f.family == family {
                if f.bold == bold {
                    return Some(id);
                }
                fallback.get_or_insert(id);
            }
        }
        fallback
    }

    /// `preferred` if it covers `ch`, else the first face that does.
    pub fn resolve(&self, preferred: FontId, ch: char) -> Option<FontId> {
        if self.face(preferred).covers(ch) {
            return Some(preferred);
        }
        self.faces().find(|(_, f)| f.covers(ch)).map(|(id, _)| id)
    }
}

/// Tight-cropped coverage bitmap of one glyph at one size.
///
/// Offsets are relative to the pen origin on the baseline, y pointing down.
#[derive(Debug, Clone, PartialEq)]
pub struct GlyphRaster {
    pub left: i32,
    pub top: i32,
    pub width: u32,
    pub height: u32,
    pub coverage: Vec<u8>,
    pub advance: f32,
}

impl GlyphRaster {
    pub fn has_ink(&self) -> bool {
        self.width > 0
    }

    /// Ink box for a glyph whose pen origin is `(ox, baseline)`.
    pub(crate) fn ink_box(&self, ox: i32, baseline: i32) -> IBox {
        IBox {
            x0: ox + self.left,
            y0: baseline + self.top,
            x1: ox + self.left + self.width as i32,
            y1: baseline + self.top + self.height as i32,
        }
    }
}

fn crop(metrics: &fontdue::Metrics, bitmap: &[u8]) -> GlyphRaster {
    let (w, h) = (metrics.width, metrics.height);
    let (mut x0, mut y0, mut x1, mut y1) = (w, h, 0, 0);
    for y in 0..h {
        for x in 0..w {
            if bitmap[y * w + x] != 0 {
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x + 1);
                y1 = y1.max(y + 1);
            }
        }
    }
    let bitmap_top = -(metrics.ymin + h as i32);
    if x1 <= x0 {
        return GlyphRaster {
            left: metrics.xmin,
            top: bitmap_top,
            width: 0,
            height: 0,
            coverage: Vec::new(),
            advance: metrics.advance_width,
        };
    }
    let mut coverage = Vec::with_capacity((x1 - x0) * (y1 - y0));
    for y in y0..y1 {
        coverage.extend_from_slice(&bitmap[y * w + x0..y * w + x1]);
    }
    GlyphRaster {
        left: metrics.xmin + x0 as i32,
        top: bitmap_top + y0 as i32,
        width: (x1 - x0) as u32,
        height: (y1 - y0) as u32,
        coverage,
        advance: metrics.advance_width,
    }
}

/// Vertical metrics in whole pixels (rounded outward).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineMetrics {
    pub ascent: i32,
    /// Positive distance below the baseline.
    pub descent: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no loaded font covers U+{:04X}", *.0 as u32)]
pub struct MissingGlyph(pub char);

/// One glyph positioned relative to a word origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PlacedGlyph {
    pub ch: char,
    pub font: FontId,
    /// Integer pen x of this glyph relative to the word origin.
    pub pen_x: i32,
    pub ink: Option<IBox>,
}

/// A shaped run: glyph positions, ink union and total advance.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ShapedRun {
    pub glyphs: Vec<PlacedGlyph>,
    pub ink: Option<IBox>,
    pub advance: i32,
}

/// Per-page glyph cache and fallback counter over a shared [`FontSet`].
pub struct Typesetter<'a> {
    fonts: &'a FontSet,
    cache: RefCell<BTreeMap<(FontId, char, u32), Rc<GlyphRaster>>>,
    fallback_substitutions: Cell<u64>,
    missing_glyphs: Cell<u64>,
}

impl<'a> Typesetter<'a> {
    pub fn new(fonts: &'a FontSet) -> Self {
        Self {
            fonts,
            cache: RefCell::new(BTreeMap::new()),
            fallback_substitutions: Cell::new(0),
            missing_glyphs: Cell::new(0),
        }
    }

    pub fn fonts(&self) -> &'a FontSet {
        self.fonts
    }

    /// Glyphs drawn from a fallback face since this typesetter was created.
    pub fn fallback_substitutions(&self) -> u64 {
        self.fallback_substitutions.get()
    }

    /// Characters no face could draw since this typesetter was created.
    pub fn missing_glyphs(&self) -> u64 {
        self.missing_glyphs.get()
    }

    pub fn glyph(&self, font: FontId, ch: char, size: u32) -> Rc<GlyphRaster> {
        let key = (font, ch, size);
        if let Some(g) = self.cache.borrow().get(&key) {
            return g.clone();
        }
        let (metrics, bitmap) = self.fonts.face(font).font.rasterize(ch, size as f32);
        let g = Rc::new(crop(&metrics, &bitmap));
        self.cache.borrow_mut().insert(key, g.clone());
        g
    }

    pub fn line_metrics(&self, font: FontId, size: u32) -> LineMetrics {
        let px = size as f32;
        match self.fonts.face(font).font.horizontal_line_metrics(px) {
            Some(m) => LineMetrics {
                ascent: ceil_px(m.ascent),
                descent: ceil_px(-m.descent),
            },
            None => LineMetrics {
                ascent: size as i32,
                descent: (size / 4) as i32,
            },
        }
    }

    fn resolve_counted(&self, preferred: FontId, ch: char) -> Result<FontId, MissingGlyph> {
        let Some(id) = self.fonts.resolve(preferred, ch) else {
            self.missing_glyphs.set(self.missing_glyphs.get() + 1);
            return Err(MissingGlyph(ch));
        };
        if id != preferred {
            self.fallback_substitutions.set(self.fallback_substitutions.get() + 1);
        }
        Ok(id)
    }

    /// Advance of a space in `font`, or a third of the size if no face has one.
    pub fn space_advance(&self, font: FontId, size: u32) -> i32 {
        match self.fonts.resolve(font, ' ') {
            Some(id) => round_px(self.glyph(id, ' ', size).advance),
            None => (size / 3) as i32,
        }
    }

    /// Shapes `text` as one run starting at pen x = 0 on baseline 0.
    ///
    /// Glyph origins are rounded to whole pixels so that a glyph's raster
    /// placement never depends on its neighbours.
    pub(crate) fn shape(&self, text: &str, font: FontId, size: u32) -> Result<ShapedRun, MissingGlyph> {
        let mut pen = 0.0f32;
        let mut glyphs = Vec::with_capacity(text.len());
        let mut ink: Option<IBox> = None;
        for ch in text.chars() {
            let id = if ch == ' ' {
                self.fonts.resolve(font, ch).unwrap_or(font)
            } else {
                self.resolve_counted(font, ch)?
            };
            let pen_x = round_px(pen);
            let raster = self.glyph(id, ch, size);
            let gi = if raster.has_ink() {
                let b = raster.ink_box(pen_x, 0);
                ink = Some(ink.map_or(b, |u| u.union(&b)));
                Some(b)
            } else {
                None
            };
            glyphs.push(PlacedGlyph {
                ch,
                font: id,
                pen_x,
                ink: gi,
            });
            pen += raster.advance;
        }
        Ok(ShapedRun {
            glyphs,
            ink,
            advance: round_px(pen),
        })
    }
}

fn round_px(v: f32) -> i32 {
    if v >= 0.0 {
        (v + 0.5) as i32
    } else {
        -((-v + 0.5) as i32)
    }
}

fn ceil_px(v: f32) -> i32 {
    let t = v as i32;
    if (t as f32) < v {
        t + 1
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_helpers() {
        assert_eq!(round_px(2.5), 3);
        assert_eq!(round_px(-2.5), -3);
        assert_eq!(round_px(2.49), 2);
        assert_eq!(ceil_px(2.01), 3);
        assert_eq!(ceil_px(2.0), 2);
        assert_eq!(ceil_px(-1.5), -1);
    }

    #[test]
    fn crop_trims_empty_border() {
        let m = fontdue::Metrics {
            xmin: 1,
            ymin: -2,
            width: 4,
            height: 3,
            advance_width: 5.0,
            advance_height: 0.0,
            bounds: Default::default(),
        };
        #[rustfmt::skip]
        let bitmap = [
            0, 0, 0, 0,
            0, 9, 7, 0,
            0, 0, 3, 0,
        ];
        let g = crop(&m, &bitmap);
        assert_eq!((g.left, g.top, g.width, g.height), (2, 0, 2, 2));
        assert_eq!(g.coverage, alloc::vec![9, 7, 0, 3]);
    }

    #[test]
    fn empty_font_set_rejected() {
        assert_eq!(FontSet::new(Vec::new()).unwrap_err(), FontError::NoFonts);
    }

    #[test]
    fn garbage_is_unparseable() {
        assert!(matches!(
            FontFace::parse(b"not a font", "x.ttf"),
            Err(FontError::Unparseable { .. })
        ));
    }
}
