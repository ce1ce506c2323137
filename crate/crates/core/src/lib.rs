//! Synthetic document page generation: page partitioning, content filling
//! with multi-level ground-truth boxes, and rasterization.
//!
//! The crate is `no_std` and needs only `alloc`. File loading, serialization
//! and batch orchestration live in the `docsynth` crate.

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod fill;
pub mod font;
pub mod formula;
pub mod geom;
pub mod layout;
pub mod page;
pub mod pool;
pub mod render;
pub mod seed;

pub use corpus::{sample_text, CorpusError, TextCorpus};
pub use fill::{
    assign_component_kinds, layout_text_lines, CharBox, ComponentInstance, ComponentKind, ComponentMix, FillParams,
    LineLayout, TableSpec, TextStyle, WordBox,
};
pub use font::{FontError, FontFace, FontId, FontSet, Typesetter};
pub use formula::{generate_formula, FormulaGrammar};
pub use geom::Rect;
pub use layout::{
    generate_fixed_column_layout, generate_flexible_layout, leaf_regions, validate_layout, FixedColumnParams,
    FlexibleParams, LayoutError, LayoutMode, LayoutTree, PageSpec, RegionNode, SplitAxis,
};
pub use page::{compose_page, ComposedPage, PageAssets, PageError, PageParams, PageRecipe, PageStats};
pub use pool::{sample_image, ImageAsset, ImagePool, PlacedImage};
pub use render::{measure_glyph_boxes, render_page, Encoding, ImageSource, PageStyle, RasterImage};
