//! Filling leaf regions with document components.
//!
//! Text components carry a four-level box hierarchy: component, line, word,
//! character. Character boxes are ink-tight glyph rasters; every parent box is
//! the exact union of its children, and everything stays inside the region
//! the component was assigned.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::corpus::{sample_text, TextCorpus};
use crate::font::{FontId, MissingGlyph, ShapedRun, Typesetter};
use crate::formula::{generate_formula, FormulaGrammar};
use crate::geom::{IBox, Rect};
use crate::pool::{sample_image, ImagePool, PlacedImage, PoolError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Title,
    Paragraph,
    Table,
    Figure,
    Formula,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 5] = [
        ComponentKind::Title,
        ComponentKind::Paragraph,
        ComponentKind::Table,
        ComponentKind::Figure,
        ComponentKind::Formula,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ComponentKind::Title => "Title",
            ComponentKind::Paragraph => "Paragraph",
            ComponentKind::Table => "Table",
            ComponentKind::Figure => "Figure",
            ComponentKind::Formula => "Formula",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub const fn index(self) -> usize {
        self as usize
    }

    /// 1-based id used in the component-level category table.
    pub const fn category_id(self) -> u32 {
        self as u32 + 1
    }

    /// Title, Paragraph and Table are annotated down to characters; Figure
    /// and Formula only at component level.
    pub const fn has_sub_levels(self) -> bool {
        matches!(self, ComponentKind::Title | ComponentKind::Paragraph | ComponentKind::Table)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharBox {
    pub ch: char,
    pub bbox: Rect,
    /// Face the glyph was drawn from (differs from the style face on fallback).
    pub font: FontId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordBox {
    pub text: String,
    pub bbox: Rect,
    pub chars: Vec<CharBox>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineLayout {
    pub bbox: Rect,
    pub words: Vec<WordBox>,
    pub baseline: u32,
}

impl LineLayout {
    pub fn text(&self) -> String {
        join(self.words.iter().map(|w| w.text.as_str()), " ")
    }

    fn translate(&mut self, dx: i32, dy: i32) {
        let mv = |r: &mut Rect| {
            r.x = (r.x as i32 + dx) as u32;
            r.y = (r.y as i32 + dy) as u32;
        };
        mv(&mut self.bbox);
        self.baseline = (self.baseline as i32 + dy) as u32;
        for w in &mut self.words {
            mv(&mut w.bbox);
            for c in &mut w.chars {
                mv(&mut c.bbox);
            }
        }
    }
}

fn join<'a>(parts: impl Iterator<Item = &'a str>, sep: &str) -> String {
    let mut out = String::new();
    for (i, p) in parts.enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        out.push_str(p);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub rows: u32,
    pub cols: u32,
    /// Row-major cell rects; they tile the table bbox.
    pub cells: Vec<Rect>,
    /// Row-major text placed in each cell (may be empty).
    pub cell_texts: Vec<String>,
    /// Rects whose 1 px outlines form the table rules.
    pub ruling: Vec<Rect>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextStyle {
    pub family: String,
    pub font: FontId,
    /// Pixel size (pixels per em).
    pub font_size: u32,
    pub color: [u8; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInstance {
    pub kind: ComponentKind,
    pub region: Rect,
    pub bbox: Rect,
    /// Empty for figures. Table lines are listed cell by cell, row-major.
    pub lines: Vec<LineLayout>,
    pub table: Option<TableSpec>,
    pub image: Option<PlacedImage>,
    /// `None` for figures.
    pub style: Option<TextStyle>,
    /// Placed text (lines joined by newlines) or the formula string.
    pub text: Option<String>,
    /// Some sampled text did not fit and was dropped.
    pub truncated: bool,
}

/// Probability of each kind, indexed like [`ComponentKind::ALL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentMix([f64; 5]);

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum MixError {
    #[error("probability for {0} is negative or not finite")]
    BadWeight(ComponentKind),
    #[error("probabilities sum to {0}, expected 1")]
    BadSum(f64),
}

impl ComponentMix {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(weights: [f64; 5]) -> Result<Self, MixError> {
        for (k, w) in ComponentKind::ALL.iter().zip(weights) {
            if !(w.is_finite() && w >= 0.0) {
                return Err(MixError::BadWeight(*k));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(MixError::BadSum(sum));
        }
        Ok(Self(weights))
    }

    /// All probability on one kind.
    pub fn only(kind: ComponentKind) -> Self {
        let mut w = [0.0; 5];
        w[kind.index()] = 1.0;
        Self(w)
    }

    pub fn uniform() -> Self {
        Self([0.2; 5])
    }

    pub fn weight(&self, kind: ComponentKind) -> f64 {
        self.0[kind.index()]
    }

    pub fn weights(&self) -> [f64; 5] {
        self.0
    }

    /// Draws a kind, optionally excluding one and renormalizing the rest.
    /// Returns `None` if nothing has positive weight.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R, exclude: Option<ComponentKind>) -> Option<ComponentKind> {
        let weight = |k: ComponentKind| if Some(k) == exclude { 0.0 } else { self.0[k.index()] };
        let total: f64 = ComponentKind::ALL.iter().map(|&k| weight(k)).sum();
        if total <= 0.0 {
            return None;
        }
        let mut r = rng.gen::<f64>() * total;
        let mut last = None;
        for k in ComponentKind::ALL {
            let w = weight(k);
            if w <= 0.0 {
                continue;
            }
            if r < w {
                return Some(k);
            }
            r -= w;
            last = Some(k);
        }
        last
    }
}

impl Default for ComponentMix {
    fn default() -> Self {
        // Title, Paragraph, Table, Figure, Formula
        Self([0.12, 0.55, 0.12, 0.13, 0.08])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FillParams {
    /// Inclusive pixel size range for every text component.
    pub font_size_range: (u32, u32),
    /// Baseline-to-baseline distance as a multiple of the font size.
    pub line_spacing: f32,
    /// Per-channel upper bound of the jitter added to black text.
    pub color_jitter_max: u8,
    /// Title size multiplier in tenths (14 = 1.4x), capped at the range top.
    pub title_scale_tenths: u32,
    /// Chance that the first region of a page is forced to be a title.
    pub title_boost: f64,
    pub title_max_lines: usize,
    /// Regions smaller than this (w, h) never become tables.
    pub min_table_size: (u32, u32),
    pub table_rows: (u32, u32),
    pub table_cols: (u32, u32),
    pub min_cell_size: (u32, u32),
    pub cell_padding: u32,
    /// Allowed horizontal ink overlap between neighbouring words.
    pub kerning_tolerance: u32,
    pub grammar: FormulaGrammar,
    pub mix: ComponentMix,
}

impl Default for FillParams {
    fn default() -> Self {
        Self {
            font_size_range: (18, 31),
            line_spacing: 1.25,
            color_jitter_max: 40,
            title_scale_tenths: 14,
            title_boost: 0.3,
            title_max_lines: 2,
            min_table_size: (240, 120),
            table_rows: (2, 6),
            table_cols: (2, 4),
            min_cell_size: (60, 28),
            cell_padding: 4,
            kerning_tolerance: 0,
            grammar: FormulaGrammar::default(),
            mix: ComponentMix::default(),
        }
    }
}

impl FillParams {
    pub fn table_fits(&self, region: &Rect) -> bool {
        region.w >= self.min_table_size.0 && region.h >= self.min_table_size.1
    }

    fn pitch(&self, size: u32) -> i32 {
        let p = size as f32 * self.line_spacing + 0.5;
        (p as i32).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FillError {
    #[error("region {region} is too small for a {kind}")]
    RegionTooSmall { kind: ComponentKind, region: Rect },
    #[error(transparent)]
    Pool(#[from] PoolError),
}

/// Draws a kind for every region.
///
/// The first region becomes a Title with probability `title_boost`; every
/// other draw follows `mix`. A region below `min_table_size` that draws Table
/// is re-drawn among the remaining kinds.
pub fn assign_component_kinds<R: Rng + ?Sized>(
    regions: &[Rect],
    params: &FillParams,
    rng: &mut R,
) -> Vec<(Rect, ComponentKind)> {
    regions
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if i == 0 && params.title_boost > 0.0 && rng.gen_bool(params.title_boost.min(1.0)) {
                return (*r, ComponentKind::Title);
            }
            let mut kind = params.mix.draw(rng, None).unwrap_or(ComponentKind::Paragraph);
            if kind == ComponentKind::Table && !params.table_fits(r) {
                kind = params
                    .mix
                    .draw(rng, Some(ComponentKind::Table))
                    .unwrap_or(ComponentKind::Paragraph);
            }
            (*r, kind)
        })
        .collect()
}

/// Why wrapping stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrapStop {
    Complete,
    /// Next line would cross the region bottom.
    Overflow,
    /// A single word is wider than the region.
    TooWide,
    LineLimit,
    MissingGlyph(char),
    /// A word produced no ink at all.
    NoInk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrappedText {
    pub lines: Vec<LineLayout>,
    pub placed_words: usize,
    pub total_words: usize,
    pub stop: WrapStop,
}

impl WrappedText {
    pub fn truncated(&self) -> bool {
        self.placed_words < self.total_words
    }

    pub fn text(&self) -> String {
        let lines: Vec<String> = self.lines.iter().map(LineLayout::text).collect();
        join(lines.iter().map(String::as_str), "\n")
    }
}

struct PendingWord {
    origin: i32,
    run: ShapedRun,
    ink: IBox,
}

struct Wrapper {
    region: Rect,
    ascent: i32,
    pitch: i32,
    prev_baseline: Option<i32>,
    lines: Vec<LineLayout>,
    placed: usize,
}

impl Wrapper {
    /// Places a finished line below the previous one; `false` if it would
    /// cross the region bottom.
    fn commit(&mut self, words: &[PendingWord]) -> bool {
        let ink = words
            .iter()
            .map(|w| w.ink.translate(w.origin, 0))
            .reduce(|a, b| a.union(&b))
            .expect("lines are never empty");
        let top = self.region.y as i32;
        let mut baseline = match self.prev_baseline {
            None => top + self.ascent.max(-ink.y0),
            Some(b) => b + self.pitch,
        };
        baseline = baseline.max(top - ink.y0);
        if baseline + ink.y1 > self.region.bottom() as i32 {
            return false;
        }
        let x0 = self.region.x as i32;
        let mut boxes = Vec::with_capacity(words.len());
        for w in words {
            let mut chars = Vec::with_capacity(w.run.glyphs.len());
            for g in &w.run.glyphs {
                if let Some(b) = g.ink {
                    let bbox = b
                        .translate(x0 + w.origin, baseline)
                        .to_rect_within(&self.region)
                        .expect("glyph ink placed inside region");
                    chars.push(CharBox {
                        ch: g.ch,
                        bbox,
                        font: g.font,
                    });
                }
            }
            let bbox = Rect::union_all(chars.iter().map(|c| &c.bbox)).expect("word has ink");
            boxes.push(WordBox {
                text: chars.iter().map(|c| c.ch).collect(),
                bbox,
                chars,
            });
        }
        let bbox = Rect::union_all(boxes.iter().map(|w| &w.bbox)).expect("line has words");
        self.placed += boxes.len();
        self.lines.push(LineLayout {
            bbox,
            words: boxes,
            baseline: baseline as u32,
        });
        self.prev_baseline = Some(baseline);
        true
    }
}

/// Greedy first-fit wrap of whitespace-separated words into `region`.
///
/// Words go left to right until the next one would cross the right edge; the
/// line is then committed and a new one started. Wrapping stops, dropping the
/// remaining words, when a line would cross the bottom edge, when
/// `max_lines` is reached, or when a word cannot be drawn at all. The placed
/// words are therefore always a prefix of the input words.
pub fn wrap_text(
    ts: &Typesetter<'_>,
    text: &str,
    region: &Rect,
    font: FontId,
    size: u32,
    params: &FillParams,
    max_lines: Option<usize>,
) -> WrappedText {
    let words: Vec<&str> = text.split_whitespace().collect();
    let metrics = ts.line_metrics(font, size);
    let space = ts.space_advance(font, size);
    let tolerance = params.kerning_tolerance as i32;
    let width = region.w as i32;
    let mut wrapper = Wrapper {
        region: *region,
        ascent: metrics.ascent,
        pitch: params.pitch(size),
        prev_baseline: None,
        lines: Vec::new(),
        placed: 0,
    };
    let mut line: Vec<PendingWord> = Vec::new();
    let mut stop = WrapStop::Complete;

    'words: for word in &words {
        let run = match ts.shape(word, font, size) {
            Ok(r) => r,
            Err(MissingGlyph(c)) => {
                stop = WrapStop::MissingGlyph(c);
                break;
            }
        };
        let Some(ink) = run.ink else {
            stop = WrapStop::NoInk;
            break;
        };
        loop {
            let origin = match line.last() {
                None => (-ink.x0).max(0),
                Some(prev) => {
                    let after_space = prev.origin + prev.run.advance + space;
                    let prev_right = prev.origin + prev.ink.x1;
                    after_space.max(prev_right - tolerance - ink.x0)
                }
            };
            if origin + ink.x1 <= width {
                line.push(PendingWord {
                    origin,
                    run,
                    ink,
                });
                continue 'words;
            }
            if line.is_empty() {
                stop = WrapStop::TooWide;
                break 'words;
            }
            if !wrapper.commit(&line) {
                stop = WrapStop::Overflow;
                line.clear();
                break 'words;
            }
            line.clear();
            if max_lines.is_some_and(|m| wrapper.lines.len() >= m) {
                stop = WrapStop::LineLimit;
                break 'words;
            }
        }
    }
    if !line.is_empty() && !wrapper.commit(&line) {
        stop = WrapStop::Overflow;
    }
    WrappedText {
        placed_words: wrapper.placed,
        lines: wrapper.lines,
        total_words: words.len(),
        stop,
    }
}

/// Wraps `text` into `region`; fails if not even the first word fits.
pub fn layout_text_lines(
    ts: &Typesetter<'_>,
    text: &str,
    region: &Rect,
    font: FontId,
    size: u32,
    params: &FillParams,
) -> Result<Vec<LineLayout>, FillError> {
    let wrapped = wrap_text(ts, text, region, font, size, params, None);
    if wrapped.lines.is_empty() {
        return Err(FillError::RegionTooSmall {
            kind: ComponentKind::Paragraph,
            region: *region,
        });
    }
    Ok(wrapped.lines)
}

/// Shared inputs of the fill operations. Immutable; one per page.
pub struct FillContext<'a, 'f> {
    pub ts: &'a Typesetter<'f>,
    pub corpus: &'a TextCorpus,
    pub pool: &'a ImagePool,
    pub params: &'a FillParams,
}

const TEXT_ATTEMPTS: usize = 3;

fn draw_style<R: Rng + ?Sized>(ctx: &FillContext<'_, '_>, rng: &mut R, bold: bool, size: u32) -> TextStyle {
    let fonts = ctx.ts.fonts();
    let family = &fonts.families()[rng.gen_range(0..fonts.families().len())];
    let font = fonts.face_for(family, bold).expect("family comes from the set");
    let j = ctx.params.color_jitter_max;
    let color = [rng.gen_range(0..=j), rng.gen_range(0..=j), rng.gen_range(0..=j)];
    TextStyle {
        family: family.clone(),
        font,
        font_size: size,
        color,
    }
}

fn draw_size<R: Rng + ?Sized>(params: &FillParams, rng: &mut R) -> u32 {
    let (lo, hi) = params.font_size_range;
    rng.gen_range(lo..=hi)
}

fn text_component(
    kind: ComponentKind,
    region: Rect,
    style: TextStyle,
    wrapped: WrappedText,
) -> ComponentInstance {
    let bbox = Rect::union_all(wrapped.lines.iter().map(|l| &l.bbox)).expect("non-empty");
    ComponentInstance {
        kind,
        region,
        bbox,
        truncated: wrapped.truncated(),
        text: Some(wrapped.text()),
        lines: wrapped.lines,
        table: None,
        image: None,
        style: Some(style),
    }
}

/// Running text sized to roughly fill the region; overflow is dropped.
pub fn fill_paragraph<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    let size = draw_size(ctx.params, rng);
    let style = draw_style(ctx, rng, false, size);
    let per_line = (region.w as usize * 2) / size as usize;
    let lines = region.h as usize / ctx.params.pitch(size) as usize;
    let target = (per_line * lines.max(1) * 11) / 10 + 1;
    for _ in 0..TEXT_ATTEMPTS {
        let text = sample_text(ctx.corpus, rng, target);
        let wrapped = wrap_text(ctx.ts, &text, region, style.font, size, ctx.params, None);
        if !wrapped.lines.is_empty() {
            return Ok(text_component(ComponentKind::Paragraph, *region, style, wrapped));
        }
    }
    Err(FillError::RegionTooSmall {
        kind: ComponentKind::Paragraph,
        region: *region,
    })
}

/// A short fragment in a larger, bold-preferred face, at most
/// `title_max_lines` lines.
pub fn fill_title<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    let base = draw_size(ctx.params, rng);
    let size = ((base * ctx.params.title_scale_tenths + 5) / 10).min(ctx.params.font_size_range.1);
    let style = draw_style(ctx, rng, true, size);
    for _ in 0..TEXT_ATTEMPTS {
        let target = rng.gen_range(12..=60);
        let text = sample_text(ctx.corpus, rng, target);
        let wrapped = wrap_text(
            ctx.ts,
            &text,
            region,
            style.font,
            size,
            ctx.params,
            Some(ctx.params.title_max_lines),
        );
        if !wrapped.lines.is_empty() {
            return Ok(text_component(ComponentKind::Title, *region, style, wrapped));
        }
    }
    Err(FillError::RegionTooSmall {
        kind: ComponentKind::Title,
        region: *region,
    })
}

fn split_even(total: u32, n: u32) -> Vec<u32> {
    let base = total / n;
    let rem = total % n;
    (0..n).map(|i| base + u32::from(i < rem)).collect()
}

/// A ruled grid anchored at the region's top-left; each cell holds a short
/// wrapped text with its own line/word/character boxes.
pub fn fill_table<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    let p = ctx.params;
    let too_small = FillError::RegionTooSmall {
        kind: ComponentKind::Table,
        region: *region,
    };
    // inner cell height needed for one line at `size`, plus padding and rules
    let need_h = |size: u32| (p.pitch(size) as u32 + 2 * p.cell_padding + 2).max(p.min_cell_size.1);
    let cell_w = p.min_cell_size.0.max(2 * p.cell_padding + 3);
    let max_cols = (region.w / cell_w).min(p.table_cols.1);
    if max_cols < p.table_cols.0 {
        return Err(too_small);
    }
    let (lo, hi) = p.font_size_range;
    let fits = |s: u32| region.h / need_h(s) >= p.table_rows.0;
    let Some(max_size) = (lo..=hi).rev().find(|&s| fits(s)) else {
        return Err(too_small);
    };
    let size = rng.gen_range(lo..=max_size);
    let style = draw_style(ctx, rng, false, size);
    let min_row = need_h(size);
    let max_rows = (region.h / min_row).min(p.table_rows.1);
    let rows = rng.gen_range(p.table_rows.0..=max_rows);
    let cols = rng.gen_range(p.table_cols.0..=max_cols);
    let row_h = (region.h / rows).min(min_row * 2);
    let bbox = Rect::new(region.x, region.y, region.w, row_h * rows);
    let widths = split_even(bbox.w, cols);

    let mut cells = Vec::with_capacity((rows * cols) as usize);
    let mut cell_texts = Vec::with_capacity(cells.capacity());
    let mut lines = Vec::new();
    let mut truncated = false;
    for r in 0..rows {
        let mut x = bbox.x;
        for &w in &widths {
            let cell = Rect::new(x, bbox.y + r * row_h, w, row_h);
            x += w;
            cells.push(cell);
            let mut placed = String::new();
            if let Some(inner) = cell.inset(p.cell_padding + 1) {
                let capacity = ((inner.w as usize * 2) / size as usize).max(1);
                for _ in 0..TEXT_ATTEMPTS {
                    let target = rng.gen_range(1..=capacity.min(24));
                    let text = sample_text(ctx.corpus, rng, target);
                    let wrapped = wrap_text(ctx.ts, &text, &inner, style.font, size, p, None);
                    if !wrapped.lines.is_empty() {
                        truncated |= wrapped.truncated();
                        placed = wrapped.text();
                        lines.extend(wrapped.lines);
                        break;
                    }
                }
            }
            cell_texts.push(placed);
        }
    }
    let text = join(cell_texts.iter().map(String::as_str).filter(|t| !t.is_empty()), "\n");
    Ok(ComponentInstance {
        kind: ComponentKind::Table,
        region: *region,
        bbox,
        lines,
        table: Some(TableSpec {
            rows,
            cols,
            ruling: cells.clone(),
            cells,
            cell_texts,
        }),
        image: None,
        style: Some(style),
        text: Some(text),
        truncated,
    })
}

/// An image from the pool, scaled and centered in the region.
pub fn fill_figure<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    let placed = sample_image(ctx.pool, rng, region)?;
    Ok(ComponentInstance {
        kind: ComponentKind::Figure,
        region: *region,
        bbox: placed.rect,
        lines: Vec::new(),
        table: None,
        image: Some(placed),
        style: None,
        text: None,
        truncated: false,
    })
}

/// One generated formula on a single line centered in the region. Formulas
/// that do not fit are regenerated at decreasing depth.
pub fn fill_formula<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    let size = draw_size(ctx.params, rng);
    let style = draw_style(ctx, rng, false, size);
    let mut grammar: FormulaGrammar = ctx.params.grammar.clone();
    loop {
        for _ in 0..TEXT_ATTEMPTS {
            let formula = generate_formula(&grammar, rng);
            let wrapped = wrap_text(ctx.ts, &formula, region, style.font, size, ctx.params, Some(1));
            if wrapped.stop != WrapStop::Complete || wrapped.lines.len() != 1 {
                continue;
            }
            let mut line = wrapped.lines.into_iter().next().expect("one line");
            let dx = (region.x + (region.w - line.bbox.w) / 2) as i32 - line.bbox.x as i32;
            let dy = (region.y + (region.h - line.bbox.h) / 2) as i32 - line.bbox.y as i32;
            line.translate(dx, dy);
            return Ok(ComponentInstance {
                kind: ComponentKind::Formula,
                region: *region,
                bbox: line.bbox,
                lines: alloc::vec![line],
                table: None,
                image: None,
                style: Some(style),
                text: Some(formula),
                truncated: false,
            });
        }
        if grammar.max_depth <= 1 {
            return Err(FillError::RegionTooSmall {
                kind: ComponentKind::Formula,
                region: *region,
            });
        }
        grammar.max_depth -= 1;
    }
}

pub fn fill_component<R: Rng + ?Sized>(
    ctx: &FillContext<'_, '_>,
    kind: ComponentKind,
    region: &Rect,
    rng: &mut R,
) -> Result<ComponentInstance, FillError> {
    match kind {
        ComponentKind::Title => fill_title(ctx, region, rng),
        ComponentKind::Paragraph => fill_paragraph(ctx, region, rng),
        ComponentKind::Table => fill_table(ctx, region, rng),
        ComponentKind::Figure => fill_figure(ctx, region, rng),
        ComponentKind::Formula => fill_formula(ctx, region, rng),
    }
}
