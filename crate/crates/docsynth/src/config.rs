//! Generation config: JSON file plus command-line overrides.
//!
//! Field names are camelCase. Every field is optional; missing fields take
//! their defaults. With a config file, relative paths (defaults included)
//! resolve against the file's directory; without one, against the working
//! directory.

use std::path::{Path, PathBuf};

use docsynth_core::layout::{FixedColumnParams, FlexibleParams, PageSpec, DEFAULT_GUTTER, DEFAULT_MARGIN};
use docsynth_core::{ComponentMix, Encoding, FillParams, FormulaGrammar, PageParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("config field `{field}`: {constraint}")]
    Invalid { field: &'static str, constraint: String },
}

fn invalid(field: &'static str, constraint: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        constraint: constraint.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ModeSetting {
    FixedColumn,
    Flexible,
    /// Each page picks fixed-column with probability `mixedRatio`.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct MixConfig {
    pub title: f64,
    pub paragraph: f64,
    pub table: f64,
    pub figure: f64,
    pub formula: f64,
}

impl Default for MixConfig {
    fn default() -> Self {
        let [title, paragraph, table, figure, formula] = ComponentMix::default().weights();
        Self {
            title,
            paragraph,
            table,
            figure,
            formula,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct FixedColumnConfig {
    pub num_columns: u32,
    pub max_breaks: u32,
    pub min_region_height: u32,
    pub min_column_width: u32,
}

impl Default for FixedColumnConfig {
    fn default() -> Self {
        let p = FixedColumnParams::default();
        Self {
            num_columns: p.num_columns,
            max_breaks: p.max_breaks,
            min_region_height: p.min_region_height,
            min_column_width: p.min_column_width,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct FlexibleConfig {
    pub min_area: u64,
    pub min_side: u32,
}

impl Default for FlexibleConfig {
    fn default() -> Self {
        let p = FlexibleParams::default();
        Self {
            min_area: p.min_area,
            min_side: p.min_side,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct FormulaConfig {
    pub max_depth: u32,
    pub operators: Vec<String>,
    pub variable_symbols: Vec<String>,
    pub digit_range: [u32; 2],
    pub unicode_superscripts: bool,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        let g = FormulaGrammar::default();
        Self {
            max_depth: g.max_depth,
            operators: g.operators,
            variable_symbols: g.variable_symbols,
            digit_range: [g.digit_range.0, g.digit_range.1],
            unicode_superscripts: g.unicode_superscripts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct PathsConfig {
    pub corpus: PathBuf,
    pub fonts: PathBuf,
    pub image_pool: PathBuf,
    pub output_dir: PathBuf,
    pub background_texture: Option<PathBuf>,
}

impl Default for PathsConfig {
    fn default() -> Self {
        Self {
            corpus: "assets/corpus_vi.txt".into(),
            fonts: "assets/fonts".into(),
            image_pool: "assets/images".into(),
            output_dir: "out".into(),
            background_texture: None,
        }
    }
}

impl PathsConfig {
    fn resolve_against(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.corpus);
        fix(&mut self.fonts);
        fix(&mut self.image_pool);
        fix(&mut self.output_dir);
        if let Some(t) = &mut self.background_texture {
            fix(t);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ImageFormat {
    Png,
    Jpeg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct EncodingConfig {
    pub format: ImageFormat,
    /// JPEG quality, 1..=100; ignored for PNG.
    pub quality: u8,
}

impl Default for EncodingConfig {
    fn default() -> Self {
        Self {
            format: ImageFormat::Png,
            quality: 90,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct GenerationConfig {
    pub count: u64,
    pub mode: ModeSetting,
    pub mixed_ratio: f64,
    pub master_seed: u64,
    pub page_width_range: [u32; 2],
    pub page_height_range: [u32; 2],
    pub margin: u32,
    pub gutter: u32,
    pub font_size_range: [u32; 2],
    pub line_spacing: f32,
    pub color_jitter_max: u32,
    pub component_mix: MixConfig,
    pub title_boost: f64,
    pub min_table_size: [u32; 2],
    pub fixed_column_params: FixedColumnConfig,
    pub flexible_params: FlexibleConfig,
    pub formula: FormulaConfig,
    pub language_tag: String,
    pub background_color: [u8; 3],
    pub ruling_color: [u8; 3],
    pub paths: PathsConfig,
    pub workers: usize,
    pub encoding: EncodingConfig,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        let fill = FillParams::default();
        Self {
            count: 100,
            mode: ModeSetting::Mixed,
            mixed_ratio: 0.5,
            master_seed: 0,
            page_width_range: [1500, 2500],
            page_height_range: [1500, 2500],
            margin: DEFAULT_MARGIN,
            gutter: DEFAULT_GUTTER,
            font_size_range: [fill.font_size_range.0, fill.font_size_range.1],
            line_spacing: fill.line_spacing,
            color_jitter_max: fill.color_jitter_max as u32,
            component_mix: MixConfig::default(),
            title_boost: fill.title_boost,
            min_table_size: [fill.min_table_size.0, fill.min_table_size.1],
            fixed_column_params: FixedColumnConfig::default(),
            flexible_params: FlexibleConfig::default(),
            formula: FormulaConfig::default(),
            language_tag: "vi".into(),
            background_color: [255, 255, 255],
            ruling_color: [40, 40, 40],
            paths: PathsConfig::default(),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            encoding: EncodingConfig::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub count: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

fn check_range(field: &'static str, r: [u32; 2]) -> Result<(), ConfigError> {
    if r[0] > r[1] {
        return Err(invalid(field, format!("low {} exceeds high {}", r[0], r[1])));
    }
    Ok(())
}

impl GenerationConfig {
    /// Parses JSON text; relative paths resolve against `base`.
    pub fn from_json(text: &str, base: &Path, origin: &Path) -> Result<Self, ConfigError> {
        let mut cfg: Self = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        cfg.paths.resolve_against(base);
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(c) = o.count {
            self.count = c;
        }
        if let Some(s) = o.seed {
            self.master_seed = s;
        }
        if let Some(w) = o.workers {
            self.workers = w;
        }
        if let Some(d) = &o.output_dir {
            self.paths.output_dir = d.clone();
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.count < 1 {
            return Err(invalid("count", "must be at least 1"));
        }
        if self.workers < 1 {
            return Err(invalid("workers", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.mixed_ratio) {
            return Err(invalid("mixedRatio", "must lie in [0, 1]"));
        }
        check_range("pageWidthRange", self.page_width_range)?;
        check_range("pageHeightRange", self.page_height_range)?;
        check_range("fontSizeRange", self.font_size_range)?;
        check_range("formula.digitRange", self.formula.digit_range)?;
        if self.font_size_range[0] == 0 {
            return Err(invalid("fontSizeRange", "sizes must be positive"));
        }
        let min_side = self.page_width_range[0].min(self.page_height_range[0]);
        if PageSpec::new(min_side, min_side, self.margin, self.gutter).is_err() {
            return Err(invalid(
                "margin",
                format!("2 × margin + gutter must be below the smallest page side {min_side}"),
            ));
        }
        if !(self.line_spacing.is_finite() && self.line_spacing > 0.0) {
            return Err(invalid("lineSpacing", "must be positive"));
        }
        if self.color_jitter_max > 255 {
            return Err(invalid("colorJitterMax", "must be at most 255"));
        }
        if !(0.0..=1.0).contains(&self.title_boost) {
            return Err(invalid("titleBoost", "must lie in [0, 1]"));
        }
        ComponentMix::new(self.mix_weights()).map_err(|e| invalid("componentMix", e.to_string()))?;
        let f = &self.fixed_column_params;
        if f.num_columns < 1 {
            return Err(invalid("fixedColumnParams.numColumns", "must be at least 1"));
        }
        if f.min_region_height < 1 {
            return Err(invalid("fixedColumnParams.minRegionHeight", "must be at least 1"));
        }
        let x = &self.flexible_params;
        if x.min_side < 1 || x.min_area < 1 {
            return Err(invalid("flexibleParams", "minArea and minSide must be positive"));
        }
        self.grammar()
            .validate()
            .map_err(|e| invalid("formula", e.to_string()))?;
        if self.encoding.format == ImageFormat::Jpeg && !(1..=100).contains(&self.encoding.quality) {
            return Err(invalid("encoding.quality", "must lie in [1, 100]"));
        }
        if self.language_tag.is_empty() {
            return Err(invalid("languageTag", "must not be empty"));
        }
        Ok(())
    }

    fn mix_weights(&self) -> [f64; 5] {
        let m = &self.component_mix;
        [m.title, m.paragraph, m.table, m.figure, m.formula]
    }

    pub fn grammar(&self) -> FormulaGrammar {
        let f = &self.formula;
        FormulaGrammar {
            max_depth: f.max_depth,
            operators: f.operators.clone(),
            variable_symbols: f.variable_symbols.clone(),
            digit_range: (f.digit_range[0], f.digit_range[1]),
            unicode_superscripts: f.unicode_superscripts,
        }
    }

    /// Generator parameters. Call only on a validated config.
    pub fn page_params(&self) -> PageParams {
        let f = &self.fixed_column_params;
        let x = &self.flexible_params;
        PageParams {
            fixed: FixedColumnParams {
                num_columns: f.num_columns,
                max_breaks: f.max_breaks,
                min_region_height: f.min_region_height,
                min_column_width: f.min_column_width,
            },
            flexible: FlexibleParams {
                min_area: x.min_area,
                min_side: x.min_side,
            },
            fill: FillParams {
                font_size_range: (self.font_size_range[0], self.font_size_range[1]),
                line_spacing: self.line_spacing,
                color_jitter_max: self.color_jitter_max as u8,
                title_boost: self.title_boost,
                min_table_size: (self.min_table_size[0], self.min_table_size[1]),
                grammar: self.grammar(),
                mix: ComponentMix::new(self.mix_weights()).expect("validated mix"),
                ..FillParams::default()
            },
        }
    }

    pub fn image_encoding(&self) -> Encoding {
        match self.encoding.format {
            ImageFormat::Png => Encoding::Png,
            ImageFormat::Jpeg => Encoding::Jpeg {
                quality: self.encoding.quality,
            },
        }
    }

    pub fn image_extension(&self) -> &'static str {
        match self.encoding.format {
            ImageFormat::Png => "png",
            ImageFormat::Jpeg => "jpg",
        }
    }
}

/// Loads `path` (or pure defaults when `None`), applies overrides and
/// validates.
pub fn parse_config(path: Option<&Path>, overrides: &Overrides) -> Result<GenerationConfig, ConfigError> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            let base = p.parent().unwrap_or(Path::new("."));
            GenerationConfig::from_json(&text, base, p)?
        }
        None => GenerationConfig::default(),
    };
    cfg.apply(overrides);
    cfg.validate()?;
    Ok(cfg)
}
