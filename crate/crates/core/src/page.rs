//! One page end to end: layout, kind assignment, filling.

use alloc::vec::Vec;

use crate::corpus::TextCorpus;
use crate::fill::{
    assign_component_kinds, fill_component, fill_formula, ComponentInstance, ComponentKind, FillContext, FillError,
    FillParams,
};
use crate::font::Typesetter;
use crate::layout::{
    generate_fixed_column_layout, generate_flexible_layout, leaf_regions, FixedColumnParams, FlexibleParams,
    LayoutError, LayoutMode, LayoutTree, PageSpec,
};
use crate::pool::ImagePool;
use crate::seed::{self, tag};

/// Everything that distinguishes one page of a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PageRecipe {
    pub index: u64,
    /// Root of every random stream used for this page.
    pub seed: u64,
    pub spec: PageSpec,
    pub mode: LayoutMode,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PageParams {
    pub fixed: FixedColumnParams,
    pub flexible: FlexibleParams,
    pub fill: FillParams,
}

pub struct PageAssets<'a> {
    pub corpus: &'a TextCorpus,
    pub pool: &'a ImagePool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PageStats {
    /// Components whose sampled text did not fit completely.
    pub truncated: u64,
    /// Regions whose drawn kind could not be filled and became a formula.
    pub kind_fallbacks: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComposedPage {
    pub recipe: PageRecipe,
    pub layout: LayoutTree,
    /// One component per layout leaf, in leaf order.
    pub components: Vec<ComponentInstance>,
    pub stats: PageStats,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PageError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Fill(#[from] FillError),
}

/// Builds the layout for a recipe from its layout stream.
pub fn page_layout(recipe: &PageRecipe, params: &PageParams) -> Result<LayoutTree, LayoutError> {
    let mut rng = seed::stream(recipe.seed, tag::LAYOUT);
    match recipe.mode {
        LayoutMode::FixedColumn => generate_fixed_column_layout(&recipe.spec, &params.fixed, recipe.seed, &mut rng),
        LayoutMode::Flexible => generate_flexible_layout(&recipe.spec, &params.flexible, recipe.seed, &mut rng),
    }
}

/// Lays out and fills one page.
///
/// Region `i` fills from its own stream, so its content does not depend on
/// how many random draws earlier regions consumed. A region that is too small
/// for its drawn kind falls back to a formula.
pub fn compose_page(
    recipe: &PageRecipe,
    params: &PageParams,
    assets: &PageAssets<'_>,
    ts: &Typesetter<'_>,
) -> Result<ComposedPage, PageError> {
    let layout = page_layout(recipe, params)?;
    let regions = leaf_regions(&layout);
    let kinds = assign_component_kinds(&regions, &params.fill, &mut seed::stream(recipe.seed, tag::KINDS));
    let ctx = FillContext {
        ts,
        corpus: assets.corpus,
        pool: assets.pool,
        params: &params.fill,
    };
    let mut stats = PageStats::default();
    let mut components = Vec::with_capacity(kinds.len());
    for (i, (region, kind)) in kinds.iter().enumerate() {
        let mut rng = seed::stream(recipe.seed, tag::REGION_BASE + i as u64);
        let component = match fill_component(&ctx, *kind, region, &mut rng) {
            Ok(c) => c,
            Err(FillError::RegionTooSmall { .. }) if *kind != ComponentKind::Formula => {
                stats.kind_fallbacks += 1;
                fill_formula(&ctx, region, &mut rng)?
            }
            Err(e) => return Err(e.into()),
        };
        stats.truncated += u64::from(component.truncated);
        components.push(component);
    }
    Ok(ComposedPage {
        recipe: *recipe,
        layout,
        components,
        stats,
    })
}
