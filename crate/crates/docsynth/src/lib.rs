//! Batch generation of synthetic document images with four-level box
//! annotations: config, asset loading, job planning, page output, COCO and
//! hierarchy label files, and output validation.

pub mod annotation;
pub mod assets;
pub mod batch;
pub mod check;
pub mod coco;
pub mod config;
pub mod overlay;
pub mod plan;

pub use annotation::{emit_hierarchy, flatten, AnnotationRecord, Level, PageLabel};
pub use assets::{load_corpus, load_fonts, load_image_pool, AssetError, ImageLibrary};
pub use batch::{cmd_preview, load_assets, run_batch, Assets, BatchError, BatchStats, Generator};
pub use check::{dir_stats, validate_output_dir, ValidationReport};
pub use coco::{emit_coco, validate_annotations, CocoDocument};
pub use config::{parse_config, ConfigError, GenerationConfig, Overrides};
pub use overlay::render_debug_overlay;
pub use plan::{plan_job, plan_jobs, JobPlan};
