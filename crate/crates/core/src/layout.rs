//! Page partitioning.
//!
//! Two generators produce a [`LayoutTree`] whose leaves are the regions that
//! later receive document components:
//!
//! - [`generate_fixed_column_layout`] splits the content area into `n`
//!   equal-width columns and cuts every column at random break positions.
//! - [`generate_flexible_layout`] recursively halves regions along a random
//!   axis until no region can be split without violating the minimum area or
//!   minimum side length.
//!
//! All arithmetic is in integer pixels. Siblings are separated by exactly one
//! gutter, so partition invariants can be checked exactly by
//! [`validate_layout`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::geom::Rect;

/// Page dimensions plus the margin and gutter used by both layout modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PageSpec {
    pub width: u32,
    pub height: u32,
    /// Blank border on each side.
    pub margin: u32,
    /// Blank spacing between sibling regions.
    pub gutter: u32,
}

pub const DEFAULT_MARGIN: u32 = 72;
pub const DEFAULT_GUTTER: u32 = 16;

impl PageSpec {
    pub fn new(width: u32, height: u32, margin: u32, gutter: u32) -> Result<Self, LayoutError> {
        if width == 0 || height == 0 {
            return Err(LayoutError::InvalidPageSpec("width and height must be positive"));
        }
        let reserved = margin as u64 * 2 + gutter as u64;
        if reserved >= width.min(height) as u64 {
            return Err(LayoutError::InvalidPageSpec(
                "2 * margin + gutter must be smaller than the shorter page side",
            ));
        }
        Ok(Self {
            width,
            height,
            margin,
            gutter,
        })
    }

    /// `[margin, width - margin) × [margin, height - margin)`.
    pub fn content_area(&self) -> Rect {
        Rect::new(
            self.margin,
            self.margin,
            self.width - 2 * self.margin,
            self.height - 2 * self.margin,
        )
    }

    /// Full page rect.
    pub fn bounds(&self) -> Rect {
        Rect::new(0, 0, self.width, self.height)
    }
}

/// Direction along which a node's children are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitAxis {
    /// Children sit side by side, left to right (cuts are vertical lines).
    Horizontal,
    /// Children are stacked top to bottom (cuts are horizontal lines).
    Vertical,
}

impl SplitAxis {
    pub const fn name(self) -> &'static str {
        match self {
            SplitAxis::Horizontal => "horizontal",
            SplitAxis::Vertical => "vertical",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [SplitAxis::Horizontal, SplitAxis::Vertical].into_iter().find(|a| a.name() == name)
    }

    /// (start, extent) of `r` along this axis.
    fn span(self, r: &Rect) -> (u32, u32) {
        match self {
            SplitAxis::Horizontal => (r.x, r.w),
            SplitAxis::Vertical => (r.y, r.h),
        }
    }

    /// (start, extent) of `r` across this axis.
    fn cross(self, r: &Rect) -> (u32, u32) {
        match self {
            SplitAxis::Horizontal => (r.y, r.h),
            SplitAxis::Vertical => (r.x, r.w),
        }
    }

    /// Sub-rect of `parent` covering `[start, start + len)` along this axis.
    fn slice(self, parent: &Rect, start: u32, len: u32) -> Rect {
        match self {
            SplitAxis::Horizontal => Rect::new(start, parent.y, len, parent.h),
            SplitAxis::Vertical => Rect::new(parent.x, start, parent.w, len),
        }
    }
}

/// One node of the page partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionNode {
    pub rect: Rect,
    pub children: Vec<RegionNode>,
    /// Present iff `children` is non-empty.
    pub split: Option<SplitAxis>,
}

impl RegionNode {
    pub fn leaf(rect: Rect) -> Self {
        Self {
            rect,
            children: Vec::new(),
            split: None,
        }
    }

    pub fn split(rect: Rect, axis: SplitAxis, children: Vec<RegionNode>) -> Self {
        Self {
            rect,
            children,
            split: Some(axis),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutMode {
    FixedColumn,
    Flexible,
}

impl LayoutMode {
    pub const fn name(self) -> &'static str {
        match self {
            LayoutMode::FixedColumn => "fixedColumn",
            LayoutMode::Flexible => "flexible",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [LayoutMode::FixedColumn, LayoutMode::Flexible].into_iter().find(|m| m.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutTree {
    pub mode: LayoutMode,
    pub root: RegionNode,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedColumnParams {
    /// Upper bound of the uniformly drawn column count.
    pub num_columns: u32,
    /// Upper bound of the uniformly drawn break count per column.
    pub max_breaks: u32,
    pub min_region_height: u32,
    /// Columns narrower than this are never produced; the column count is
    /// capped accordingly.
    pub min_column_width: u32,
}

impl Default for FixedColumnParams {
    fn default() -> Self {
        Self {
            num_columns: 3,
            max_breaks: 4,
            min_region_height: 96,
            min_column_width: 240,
        }
    }
}

/// Attempts at placing `k` breaks before trying `k - 1`.
pub const MAX_BREAK_RESAMPLES: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlexibleParams {
    /// Minimum area of either child for a split to happen.
    pub min_area: u64,
    /// Minimum width and height of either child for a split to happen.
    pub min_side: u32,
}

impl Default for FlexibleParams {
    fn default() -> Self {
        Self {
            min_area: 160_000,
            min_side: 200,
        }
    }
}

/// Split fractions are drawn from `[SPLIT_LO_PCT, SPLIT_HI_PCT]` percent of
/// the extent left after removing the gutter.
pub const SPLIT_LO_PCT: u64 = 35;
pub const SPLIT_HI_PCT: u64 = 65;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("invalid page spec: {0}")]
    InvalidPageSpec(&'static str),
    #[error("invalid layout parameters: {0}")]
    InvalidParams(&'static str),
    #[error("infeasible layout: {0}")]
    InfeasibleLayout(&'static str),
}

/// Equal-width columns: remainder pixels go one each to the leftmost columns.
pub fn column_widths(total: u32, n: u32, gutter: u32) -> Vec<u32> {
    let usable = total - (n - 1) * gutter;
    let base = usable / n;
    let rem = usable % n;
    (0..n).map(|i| base + u32::from(i < rem)).collect()
}

fn max_feasible_columns(width: u32, gutter: u32, params: &FixedColumnParams) -> u32 {
    let mut n = params.num_columns;
    while n > 1 {
        let usable = width.saturating_sub((n - 1) * gutter);
        if usable / n >= params.min_column_width.max(1) {
            break;
        }
        n -= 1;
    }
    n
}

/// Draws the region heights of one column; returns `k + 1` heights for `k`
/// accepted breaks.
fn column_break_heights<R: Rng + ?Sized>(
    height: u32,
    gutter: u32,
    params: &FixedColumnParams,
    rng: &mut R,
) -> Vec<u32> {
    let mut k = rng.gen_range(0..=params.max_breaks);
    let min_h = params.min_region_height;
    while k > 0 {
        let needed = k as u64 * gutter as u64 + (k as u64 + 1) * min_h as u64;
        if needed <= height as u64 {
            let available = height - k * gutter;
            for _ in 0..MAX_BREAK_RESAMPLES {
                let mut cuts: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=available)).collect();
                cuts.sort_unstable();
                let mut heights = Vec::with_capacity(k as usize + 1);
                let mut prev = 0;
                for &c in cuts.iter().chain(core::iter::once(&available)) {
                    heights.push(c - prev);
                    prev = c;
                }
                if heights.iter().all(|&h| h >= min_h) {
                    return heights;
                }
            }
        }
        k -= 1;
    }
    vec![height]
}

fn stack(parent: Rect, axis: SplitAxis, lengths: &[u32], gutter: u32) -> Vec<RegionNode> {
    let (mut pos, _) = axis.span(&parent);
    lengths
        .iter()
        .map(|&len| {
            let node = RegionNode::leaf(axis.slice(&parent, pos, len));
            pos += len + gutter;
            node
        })
        .collect()
}

/// Builds a column node: a leaf when it has no breaks, otherwise a vertical
/// stack of leaves.
fn column_node<R: Rng + ?Sized>(
    rect: Rect,
    gutter: u32,
    params: &FixedColumnParams,
    rng: &mut R,
) -> RegionNode {
    let heights = column_break_heights(rect.h, gutter, params, rng);
    if heights.len() == 1 {
        RegionNode::leaf(rect)
    } else {
        RegionNode::split(rect, SplitAxis::Vertical, stack(rect, SplitAxis::Vertical, &heights, gutter))
    }
}

/// Fixed-column layout.
///
/// Draws the column count uniformly from `[1, num_columns]` (capped so no
/// column is narrower than `min_column_width`), splits the content area into
/// equal-width columns and stacks each column into `k + 1` regions for a
/// uniformly drawn `k ∈ [0, max_breaks]`. Break positions are resampled until
/// every region is at least `min_region_height` tall; after
/// [`MAX_BREAK_RESAMPLES`] failures `k` is reduced.
///
/// A single column is represented by the root itself rather than a
/// one-child split.
pub fn generate_fixed_column_layout<R: Rng + ?Sized>(
    spec: &PageSpec,
    params: &FixedColumnParams,
    seed: u64,
    rng: &mut R,
) -> Result<LayoutTree, LayoutError> {
    if params.num_columns == 0 {
        return Err(LayoutError::InvalidParams("num_columns must be at least 1"));
    }
    if params.min_region_height == 0 {
        return Err(LayoutError::InvalidParams("min_region_height must be positive"));
    }
    let content = spec.content_area();
    if content.h < params.min_region_height {
        return Err(LayoutError::InfeasibleLayout(
            "content height is below min_region_height",
        ));
    }
    let n_max = max_feasible_columns(content.w, spec.gutter, params);
    let n = rng.gen_range(1..=n_max);
    let root = if n == 1 {
        column_node(content, spec.gutter, params, rng)
    } else {
        let widths = column_widths(content.w, n, spec.gutter);
        let columns = stack(content, SplitAxis::Horizontal, &widths, spec.gutter)
            .into_iter()
            .map(|c| column_node(c.rect, spec.gutter, params, rng))
            .collect();
        RegionNode::split(content, SplitAxis::Horizontal, columns)
    };
    Ok(LayoutTree {
        mode: LayoutMode::FixedColumn,
        root,
        seed,
    })
}

/// Smallest child extent a split of `extent` can produce, with the allowed
/// range of first-child extents; `None` if no split fits.
fn split_range(extent: u32, gutter: u32) -> Option<(u32, u32)> {
    let avail = extent.checked_sub(gutter)? as u64;
    let lo = (avail * SPLIT_LO_PCT).div_ceil(100);
    let hi = avail * SPLIT_HI_PCT / 100;
    if lo == 0 || lo > hi {
        return None;
    }
    Some((lo as u32, hi as u32))
}

/// Whether `rect` may be split along `axis`: every admissible split position
/// leaves both children with area ≥ `min_area` and both sides ≥ `min_side`.
pub fn axis_splittable(rect: &Rect, axis: SplitAxis, gutter: u32, params: &FlexibleParams) -> bool {
    let (_, extent) = axis.span(rect);
    let (_, cross) = axis.cross(rect);
    match split_range(extent, gutter) {
        Some((lo, _)) => {
            lo >= params.min_side && cross >= params.min_side && lo as u64 * cross as u64 >= params.min_area
        }
        None => false,
    }
}

/// Stopping rule of the flexible generator.
pub fn is_splittable(rect: &Rect, gutter: u32, params: &FlexibleParams) -> bool {
    axis_splittable(rect, SplitAxis::Horizontal, gutter, params)
        || axis_splittable(rect, SplitAxis::Vertical, gutter, params)
}

fn flexible_node<R: Rng + ?Sized>(rect: Rect, gutter: u32, params: &FlexibleParams, rng: &mut R) -> RegionNode {
    let h_ok = axis_splittable(&rect, SplitAxis::Horizontal, gutter, params);
    let v_ok = axis_splittable(&rect, SplitAxis::Vertical, gutter, params);
    let axis = match (h_ok, v_ok) {
        (false, false) => return RegionNode::leaf(rect),
        (true, false) => SplitAxis::Horizontal,
        (false, true) => SplitAxis::Vertical,
        (true, true) => {
            if rng.gen_bool(0.5) {
                SplitAxis::Horizontal
            } else {
                SplitAxis::Vertical
            }
        }
    };
    let (_, extent) = axis.span(&rect);
    let (lo, hi) = split_range(extent, gutter).expect("axis checked splittable");
    let first = rng.gen_range(lo..=hi);
    let second = extent - gutter - first;
    let children = stack(rect, axis, &[first, second], gutter)
        .into_iter()
        .map(|c| flexible_node(c.rect, gutter, params, rng))
        .collect();
    RegionNode::split(rect, axis, children)
}

/// Flexible layout: recursive binary partition.
///
/// Each region independently picks a split axis (uniform when both are
/// admissible) and a split position uniform over
/// [`SPLIT_LO_PCT`]..=[`SPLIT_HI_PCT`] percent of its extent minus the
/// gutter. A region becomes a leaf once [`is_splittable`] fails.
pub fn generate_flexible_layout<R: Rng + ?Sized>(
    spec: &PageSpec,
    params: &FlexibleParams,
    seed: u64,
    rng: &mut R,
) -> Result<LayoutTree, LayoutError> {
    if params.min_area == 0 {
        return Err(LayoutError::InvalidParams("min_area must be positive"));
    }
    let content = spec.content_area();
    if content.area() < params.min_area {
        return Err(LayoutError::InfeasibleLayout("content area is below min_area"));
    }
    Ok(LayoutTree {
        mode: LayoutMode::Flexible,
        root: flexible_node(content, spec.gutter, params, rng),
        seed,
    })
}

/// Leaves in depth-first, left-to-right order.
pub fn leaf_regions(tree: &LayoutTree) -> Vec<Rect> {
    let mut out = Vec::new();
    let mut stack = vec![&tree.root];
    while let Some(node) = stack.pop() {
        if node.is_leaf() {
            out.push(node.rect);
        } else {
            stack.extend(node.children.iter().rev());
        }
    }
    out
}

/// Child-index path from the root to a node.
pub type NodePath = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayoutViolation {
    RootMismatch { expected: Rect, found: Rect },
    EmptyRect { path: NodePath },
    SplitFlagMismatch { path: NodePath },
    ChildOutsideParent { path: NodePath, child: usize },
    Overlap { path: NodePath, first: usize, second: usize },
    /// Child does not start where the previous sibling plus one gutter ends.
    TilingGap { path: NodePath, child: usize, expected: u32, found: u32 },
    /// Last child does not end at the parent's far edge.
    TilingEnd { path: NodePath, expected: u32, found: u32 },
    CrossAxisMismatch { path: NodePath, child: usize },
    LeafOutsideContent { path: NodePath, rect: Rect },
}

impl fmt::Display for LayoutViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RootMismatch { expected, found } => {
                write!(f, "root rect {found} differs from content area {expected}")
            }
            Self::EmptyRect { path } => write!(f, "node {path:?} has an empty rect"),
            Self::SplitFlagMismatch { path } => {
                write!(f, "node {path:?}: split axis must be set iff it has children")
            }
            Self::ChildOutsideParent { path, child } => {
                write!(f, "node {path:?}: child {child} leaves the parent rect")
            }
            Self::Overlap { path, first, second } => {
                write!(f, "node {path:?}: children {first} and {second} overlap")
            }
            Self::TilingGap {
                path,
                child,
                expected,
                found,
            } => write!(
                f,
                "node {path:?}: child {child} starts at {found}, expected {expected}"
            ),
            Self::TilingEnd { path, expected, found } => {
                write!(f, "node {path:?}: children end at {found}, expected {expected}")
            }
            Self::CrossAxisMismatch { path, child } => {
                write!(f, "node {path:?}: child {child} does not span the cross axis")
            }
            Self::LeafOutsideContent { path, rect } => {
                write!(f, "leaf {path:?} {rect} is outside the content area")
            }
        }
    }
}

/// Checks every partition invariant; an empty report means the tree is valid.
pub fn validate_layout(tree: &LayoutTree, spec: &PageSpec) -> Vec<LayoutViolation> {
    let content = spec.content_area();
    let mut report = Vec::new();
    if tree.root.rect != content {
        report.push(LayoutViolation::RootMismatch {
            expected: content,
            found: tree.root.rect,
        });
    }
    let mut path = Vec::new();
    validate_node(&tree.root, spec.gutter, &content, &mut path, &mut report);
    report
}

fn validate_node(
    node: &RegionNode,
    gutter: u32,
    content: &Rect,
    path: &mut NodePath,
    report: &mut Vec<LayoutViolation>,
) {
    if node.rect.is_empty() {
        report.push(LayoutViolation::EmptyRect { path: path.clone() });
    }
    if node.split.is_some() == node.children.is_empty() {
        report.push(LayoutViolation::SplitFlagMismatch { path: path.clone() });
    }
    if node.is_leaf() {
        if !content.contains(&node.rect) {
            report.push(LayoutViolation::LeafOutsideContent {
                path: path.clone(),
                rect: node.rect,
            });
        }
        return;
    }

    for (i, c) in node.children.iter().enumerate() {
        if !node.rect.contains(&c.rect) {
            report.push(LayoutViolation::ChildOutsideParent {
                path: path.clone(),
                child: i,
            });
        }
        for (j, d) in node.children.iter().enumerate().skip(i + 1) {
            if c.rect.overlaps(&d.rect) {
                report.push(LayoutViolation::Overlap {
                    path: path.clone(),
                    first: i,
                    second: j,
                });
            }
        }
    }

    if let Some(axis) = node.split {
        let (start, extent) = axis.span(&node.rect);
        let cross = axis.cross(&node.rect);
        let mut expected = start;
        for (i, c) in node.children.iter().enumerate() {
            let (cs, ce) = axis.span(&c.rect);
            if cs != expected {
                report.push(LayoutViolation::TilingGap {
                    path: path.clone(),
                    child: i,
                    expected,
                    found: cs,
                });
            }
            if axis.cross(&c.rect) != cross {
                report.push(LayoutViolation::CrossAxisMismatch {
                    path: path.clone(),
                    child: i,
                });
            }
            expected = cs + ce + gutter;
        }
        let end = expected - gutter;
        if end != start + extent {
            report.push(LayoutViolation::TilingEnd {
                path: path.clone(),
                expected: start + extent,
                found: end,
            });
        }
    }

    for (i, c) in node.children.iter().enumerate() {
        path.push(i);
        validate_node(c, gutter, content, path, report);
        path.pop();
    }
}
