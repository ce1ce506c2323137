//! Job planning: one recipe per page index.

use docsynth_core::layout::{LayoutMode, PageSpec};
use docsynth_core::seed::{self, tag};
use docsynth_core::PageRecipe;
use rand::Rng;

use crate::config::{GenerationConfig, ModeSetting};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobPlan {
    pub jobs: Vec<PageRecipe>,
}

/// Recipe for page `index`. Depends only on the config and the index, so a
/// longer batch repeats the pages of a shorter one.
pub fn plan_job(config: &GenerationConfig, index: u64) -> PageRecipe {
    let job_seed = seed::derive_seed(config.master_seed, index);
    let mut dims = seed::stream(job_seed, tag::PAGE_DIMS);
    let [w0, w1] = config.page_width_range;
    let [h0, h1] = config.page_height_range;
    let width = dims.gen_range(w0..=w1);
    let height = dims.gen_range(h0..=h1);
    let mode = match config.mode {
        ModeSetting::FixedColumn => LayoutMode::FixedColumn,
        ModeSetting::Flexible => LayoutMode::Flexible,
        ModeSetting::Mixed => {
            if seed::stream(job_seed, tag::MODE).gen_bool(config.mixed_ratio) {
                LayoutMode::FixedColumn
            } else {
                LayoutMode::Flexible
            }
        }
    };
    PageRecipe {
        index,
        seed: job_seed,
        spec: PageSpec::new(width, height, config.margin, config.gutter).expect("validated margins"),
        mode,
    }
}

/// Plans pages `0..count`. Call only on a validated config.
pub fn plan_jobs(config: &GenerationConfig) -> JobPlan {
    JobPlan {
        jobs: (0..config.count).map(|i| plan_job(config, i)).collect(),
    }
}
