//! Debug overlays: annotation boxes stroked over a rendered page.

use docsynth_core::render::stroke_rects;
use docsynth_core::{ComponentKind, RasterImage};

use crate::annotation::{rect, AnnotationRecord, Level};

pub fn category_color(level: Level, category: &str) -> [u8; 3] {
    match (level, ComponentKind::from_name(category)) {
        (Level::Component, Some(ComponentKind::Title)) => [220, 30, 30],
        (Level::Component, Some(ComponentKind::Paragraph)) => [30, 90, 230],
        (Level::Component, Some(ComponentKind::Table)) => [20, 160, 60],
        (Level::Component, Some(ComponentKind::Figure)) => [200, 40, 200],
        (Level::Component, Some(ComponentKind::Formula)) => [240, 140, 0],
        (Level::Line, _) => [0, 170, 190],
        (Level::Word, _) => [150, 60, 220],
        _ => [230, 40, 90],
    }
}

/// Copy of `image` with every `level` record outlined in its category color.
pub fn render_debug_overlay(image: &RasterImage, records: &[AnnotationRecord], level: Level) -> RasterImage {
    let rects: Vec<_> = records
        .iter()
        .filter(|r| r.level == level)
        .map(|r| (rect(&r.bbox), category_color(level, &r.category_name)))
        .collect();
    stroke_rects(image, &rects)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page() -> RasterImage {
        RasterImage::filled(40, 30, [255, 255, 255])
    }

    fn diff(a: &RasterImage, b: &RasterImage) -> Vec<(u32, u32)> {
        (0..a.height)
            .flat_map(|y| (0..a.width).map(move |x| (x, y)))
            .filter(|&(x, y)| a.get(x, y) != b.get(x, y))
            .collect()
    }

    #[test]
    fn no_records_no_change() {
        assert_eq!(render_debug_overlay(&page(), &[], Level::Word), page());
    }

    #[test]
    fn one_record_changes_its_outline_only() {
        let r = AnnotationRecord {
            id: 1,
            image_id: 0,
            level: Level::Component,
            category_name: "Table".into(),
            bbox: [3, 4, 12, 9],
            text: None,
            parent_id: None,
        };
        let out = render_debug_overlay(&page(), std::slice::from_ref(&r), Level::Component);
        let d = diff(&page(), &out);
        assert_eq!(d.len(), 2 * 12 + 2 * 7);
        assert!(d.iter().all(|&(x, y)| x == 3 || x == 14 || y == 4 || y == 12));
        // other levels are filtered out
        assert_eq!(render_debug_overlay(&page(), &[r], Level::Line), page());
    }
}
