//! Partition properties checked with oracles that do not reuse the
//! validator or the generators' own arithmetic.

use docsynth_core::layout::{
    column_widths, is_splittable, FixedColumnParams, FlexibleParams, LayoutMode, LayoutTree, PageSpec, RegionNode,
    SplitAxis, DEFAULT_GUTTER, DEFAULT_MARGIN,
};
use docsynth_core::{generate_fixed_column_layout, generate_flexible_layout, leaf_regions, seed, validate_layout, Rect};
use proptest::prelude::*;

fn spec() -> PageSpec {
    PageSpec::new(1500, 2000, DEFAULT_MARGIN, DEFAULT_GUTTER).unwrap()
}

fn fixed(s: u64, params: &FixedColumnParams) -> LayoutTree {
    generate_fixed_column_layout(&spec(), params, s, &mut seed::stream(s, 0)).unwrap()
}

fn flexible(s: u64, params: &FlexibleParams) -> LayoutTree {
    generate_flexible_layout(&spec(), params, s, &mut seed::stream(s, 0)).unwrap()
}

/// Brute-force pairwise interior intersection test.
fn assert_pairwise_disjoint(leaves: &[Rect]) {
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            let ix = a.x.max(b.x) < (a.x + a.w).min(b.x + b.w);
            let iy = a.y.max(b.y) < (a.y + a.h).min(b.y + b.h);
            assert!(!(ix && iy), "{a} and {b} intersect");
        }
    }
}

fn count_leaves(n: &RegionNode) -> usize {
    if n.children.is_empty() {
        1
    } else {
        n.children.iter().map(count_leaves).sum()
    }
}

/// Σ gutter strips: one per adjacent sibling pair, spanning the cross extent.
fn gutter_area(n: &RegionNode, gutter: u64) -> u64 {
    let own = match n.split {
        Some(SplitAxis::Horizontal) => (n.children.len() as u64 - 1) * gutter * n.rect.h as u64,
        Some(SplitAxis::Vertical) => (n.children.len() as u64 - 1) * gutter * n.rect.w as u64,
        None => 0,
    };
    own + n.children.iter().map(|c| gutter_area(c, gutter)).sum::<u64>()
}

#[test]
fn fixed_two_columns_disjoint_over_1000_seeds() {
    let params = FixedColumnParams {
        num_columns: 2,
        ..Default::default()
    };
    let content = spec().content_area();
    for s in 0..1000 {
        let tree = fixed(s, &params);
        let leaves = leaf_regions(&tree);
        assert_pairwise_disjoint(&leaves);
        for l in &leaves {
            assert!(content.contains(l));
            assert!(l.h >= params.min_region_height);
        }
        assert!(validate_layout(&tree, &spec()).is_empty());
    }
}

#[test]
fn fixed_columns_have_equal_width() {
    let params = FixedColumnParams::default();
    let mut seen = [false; 4];
    for s in 0..500 {
        let tree = fixed(s, &params);
        let columns: Vec<&RegionNode> = match tree.root.split {
            Some(SplitAxis::Horizontal) => tree.root.children.iter().collect(),
            _ => vec![&tree.root],
        };
        let n = columns.len();
        assert!((1..=3).contains(&n));
        seen[n] = true;
        let widths: Vec<u32> = columns.iter().map(|c| c.rect.w).collect();
        let (lo, hi) = (widths.iter().min().unwrap(), widths.iter().max().unwrap());
        assert!(hi - lo <= 1, "{widths:?}");
        assert_eq!(widths, column_widths(spec().content_area().w, n as u32, DEFAULT_GUTTER));
        for c in columns {
            // columns are stacks of leaves, never deeper
            assert!(c.children.iter().all(|r| r.children.is_empty()));
            assert!(c.children.len() <= params.max_breaks as usize + 1);
        }
    }
    assert!(seen[1] && seen[2] && seen[3], "column counts drawn: {seen:?}");
}

#[test]
fn fixed_break_counts_cover_range() {
    let params = FixedColumnParams {
        num_columns: 1,
        ..Default::default()
    };
    let mut counts = std::collections::BTreeSet::new();
    for s in 0..400 {
        counts.insert(leaf_regions(&fixed(s, &params)).len());
    }
    assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
}

#[test]
fn flexible_area_accounting_over_1000_seeds() {
    let content = spec().content_area();
    for s in 0..1000 {
        let tree = flexible(s, &FlexibleParams::default());
        let leaves = leaf_regions(&tree);
        let leaf_area: u64 = leaves.iter().map(|r| r.w as u64 * r.h as u64).sum();
        assert_eq!(
            leaf_area + gutter_area(&tree.root, DEFAULT_GUTTER as u64),
            content.w as u64 * content.h as u64,
            "seed {s}"
        );
        assert_pairwise_disjoint(&leaves);
    }
}

/// A region may split along an axis only when every admissible cut leaves
/// both children above the minimums. Enumerates the cuts to confirm some
/// cut fails on both axes.
fn leaf_is_final(r: &Rect, gutter: u32, p: &FlexibleParams) -> bool {
    let along = |extent: u32, cross: u32| {
        if extent <= gutter {
            return true;
        }
        let avail = (extent - gutter) as f64;
        let lo = (avail * 0.35).ceil() as u32;
        let hi = (avail * 0.65).floor() as u32;
        if lo > hi {
            return true;
        }
        (lo..=hi).any(|first| {
            let second = extent - gutter - first;
            let small = first.min(second);
            small < p.min_side || cross < p.min_side || (small as u64 * cross as u64) < p.min_area
        })
    };
    along(r.w, r.h) && along(r.h, r.w)
}

#[test]
fn flexible_leaves_are_unsplittable() {
    let p = FlexibleParams::default();
    for s in 0..300 {
        for leaf in leaf_regions(&flexible(s, &p)) {
            assert!(leaf_is_final(&leaf, DEFAULT_GUTTER, &p), "seed {s}: {leaf} could still split");
            assert!(!is_splittable(&leaf, DEFAULT_GUTTER, &p));
        }
    }
}

#[test]
fn flexible_children_respect_minimums() {
    let p = FlexibleParams::default();
    for s in 0..300 {
        for leaf in leaf_regions(&flexible(s, &p)) {
            assert!(leaf.w >= p.min_side && leaf.h >= p.min_side);
            assert!(leaf.area() >= p.min_area);
        }
    }
}

#[test]
fn leaf_count_matches_recursive_count() {
    for s in 0..200 {
        for tree in [flexible(s, &FlexibleParams::default()), fixed(s, &FixedColumnParams::default())] {
            assert_eq!(leaf_regions(&tree).len(), count_leaves(&tree.root));
        }
    }
}

#[test]
fn flexible_uses_both_axes() {
    let mut h = 0;
    let mut v = 0;
    for s in 0..100 {
        let tree = flexible(s, &FlexibleParams::default());
        match tree.root.split {
            Some(SplitAxis::Horizontal) => h += 1,
            Some(SplitAxis::Vertical) => v += 1,
            None => {}
        }
        assert_eq!(tree.mode, LayoutMode::Flexible);
    }
    assert!(h > 20 && v > 20, "h={h} v={v}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn any_page_yields_valid_layouts(
        w in 800u32..3000,
        h in 800u32..3000,
        gutter in 0u32..40,
        seed in any::<u64>(),
        cols in 1u32..6,
        breaks in 0u32..6,
        min_area in 20_000u64..400_000,
        min_side in 40u32..300,
    ) {
        let spec = PageSpec::new(w, h, 72, gutter).unwrap();
        let fp = FixedColumnParams { num_columns: cols, max_breaks: breaks, min_region_height: 60, min_column_width: 100 };
        let a = generate_fixed_column_layout(&spec, &fp, seed, &mut seed::stream(seed, 0)).unwrap();
        prop_assert!(validate_layout(&a, &spec).is_empty());
        let b = generate_fixed_column_layout(&spec, &fp, seed, &mut seed::stream(seed, 0)).unwrap();
        prop_assert_eq!(&a, &b);

        let xp = FlexibleParams { min_area, min_side };
        if let Ok(t) = generate_flexible_layout(&spec, &xp, seed, &mut seed::stream(seed, 1)) {
            prop_assert!(validate_layout(&t, &spec).is_empty());
            for leaf in leaf_regions(&t) {
                prop_assert!(leaf_is_final(&leaf, gutter, &xp));
            }
        }
    }
}
