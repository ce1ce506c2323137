//! Per-page hierarchy labels and their flattening into annotation records.
//!
//! A label document holds page → components → lines → words → characters.
//! It carries no record ids: ids are assigned when pages are flattened in
//! index order, so labels can be written concurrently.

use docsynth_core::layout::{LayoutMode, PageSpec, RegionNode, SplitAxis};
use docsynth_core::{ComponentInstance, ComponentKind, ComposedPage, ImagePool, LayoutTree, Rect};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Level {
    Component,
    Line,
    Word,
    Character,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Component, Level::Line, Level::Word, Level::Character];

    pub const fn name(self) -> &'static str {
        match self {
            Level::Component => "component",
            Level::Line => "line",
            Level::Word => "word",
            Level::Character => "character",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name() == name)
    }

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn parent(self) -> Option<Level> {
        match self {
            Level::Component => None,
            Level::Line => Some(Level::Component),
            Level::Word => Some(Level::Line),
            Level::Character => Some(Level::Word),
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub type BBox = [u32; 4];

pub fn bbox(r: &Rect) -> BBox {
    [r.x, r.y, r.w, r.h]
}

pub fn rect(b: &BBox) -> Rect {
    Rect::new(b[0], b[1], b[2], b[3])
}

/// One box at one level, with a batch-unique id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub id: u64,
    pub image_id: u64,
    pub level: Level,
    /// A component kind name at component level, else the level name.
    pub category_name: String,
    pub bbox: BBox,
    pub text: Option<String>,
    pub parent_id: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PageInfo {
    pub id: u64,
    pub file_name: String,
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub gutter: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RegionLabel {
    pub bbox: BBox,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<RegionLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LayoutLabel {
    pub mode: String,
    pub root: RegionLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StyleLabel {
    pub family: String,
    pub font_size: u32,
    pub color: [u8; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TableLabel {
    pub rows: u32,
    pub cols: u32,
    pub cells: Vec<BBox>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FigureLabel {
    pub asset: String,
    pub bbox: BBox,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CharLabel {
    pub bbox: BBox,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WordLabel {
    pub bbox: BBox,
    pub text: String,
    pub chars: Vec<CharLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LineLabel {
    pub bbox: BBox,
    pub text: String,
    pub baseline: u32,
    pub words: Vec<WordLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ComponentLabel {
    pub category: String,
    pub region: BBox,
    pub bbox: BBox,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub style: Option<StyleLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<FigureLabel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<LineLabel>,
}

/// Hierarchy document of one page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PageLabel {
    pub page: PageInfo,
    pub layout: LayoutLabel,
    pub components: Vec<ComponentLabel>,
}

fn region_label(n: &RegionNode) -> RegionLabel {
    RegionLabel {
        bbox: bbox(&n.rect),
        split: n.split.map(|a| a.name().to_string()),
        children: n.children.iter().map(region_label).collect(),
    }
}

fn region_node(l: &RegionLabel) -> Option<RegionNode> {
    let split = match l.split.as_deref() {
        None => None,
        Some(s) => Some(SplitAxis::from_name(s)?),
    };
    Some(RegionNode {
        rect: rect(&l.bbox),
        children: l.children.iter().map(region_node).collect::<Option<_>>()?,
        split,
    })
}

impl PageLabel {
    pub fn spec(&self) -> Option<PageSpec> {
        PageSpec::new(self.page.width, self.page.height, self.page.margin, self.page.gutter).ok()
    }

    /// Layout tree rebuilt from the label, for re-validation.
    pub fn layout_tree(&self) -> Option<LayoutTree> {
        Some(LayoutTree {
            mode: LayoutMode::from_name(&self.layout.mode)?,
            root: region_node(&self.layout.root)?,
            seed: self.page.seed,
        })
    }
}

fn component_label(c: &ComponentInstance, pool: &ImagePool) -> ComponentLabel {
    // Formula lines exist only for drawing; formulas are annotated at
    // component level.
    let lines = if c.kind.has_sub_levels() {
        c.lines
            .iter()
            .map(|l| LineLabel {
                bbox: bbox(&l.bbox),
                text: l.text(),
                baseline: l.baseline,
                words: l
                    .words
                    .iter()
                    .map(|w| WordLabel {
                        bbox: bbox(&w.bbox),
                        text: w.text.clone(),
                        chars: w
                            .chars
                            .iter()
                            .map(|ch| CharLabel {
                                bbox: bbox(&ch.bbox),
                                text: ch.ch.to_string(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect()
    } else {
        Vec::new()
    };
    ComponentLabel {
        category: c.kind.name().to_string(),
        region: bbox(&c.region),
        bbox: bbox(&c.bbox),
        text: c.text.clone(),
        truncated: c.truncated,
        style: c.style.as_ref().map(|s| StyleLabel {
            family: s.family.clone(),
            font_size: s.font_size,
            color: s.color,
        }),
        table: c.table.as_ref().map(|t| TableLabel {
            rows: t.rows,
            cols: t.cols,
            cells: t.cells.iter().map(bbox).collect(),
        }),
        figure: c.image.map(|p| FigureLabel {
            asset: pool.assets.get(p.asset).map(|a| a.name.clone()).unwrap_or_default(),
            bbox: bbox(&p.rect),
        }),
        lines,
    }
}

pub fn image_file_name(index: u64, extension: &str) -> String {
    format!("{index:06}.{extension}")
}

/// Hierarchy document for a composed page.
pub fn emit_hierarchy(page: &ComposedPage, file_name: &str, pool: &ImagePool) -> PageLabel {
    let r = &page.recipe;
    PageLabel {
        page: PageInfo {
            id: r.index,
            file_name: file_name.to_string(),
            width: r.spec.width,
            height: r.spec.height,
            margin: r.spec.margin,
            gutter: r.spec.gutter,
            seed: r.seed,
        },
        layout: LayoutLabel {
            mode: page.layout.mode.name().to_string(),
            root: region_label(&page.layout.root),
        },
        components: page.components.iter().map(|c| component_label(c, pool)).collect(),
    }
}

/// Compact JSON with a trailing newline; field order follows the types.
pub fn to_json_bytes(label: &PageLabel) -> Vec<u8> {
    let mut out = serde_json::to_vec(label).expect("labels always serialize");
    out.push(b'\n');
    out
}

/// Flattens one page into per-level records, numbering from `*next_id`.
///
/// Ids run level by level (all components, then all lines, ...) and in
/// reading order within a level.
pub fn flatten(label: &PageLabel, next_id: &mut u64) -> [Vec<AnnotationRecord>; 4] {
    let image_id = label.page.id;
    let mut out: [Vec<AnnotationRecord>; 4] = Default::default();
    let mut take = || {
        let id = *next_id;
        *next_id += 1;
        id
    };
    let record = |id, level, category: &str, b: &BBox, text: Option<&str>, parent| AnnotationRecord {
        id,
        image_id,
        level,
        category_name: category.to_string(),
        bbox: *b,
        text: text.map(str::to_string),
        parent_id: parent,
    };

    let component_ids: Vec<u64> = label.components.iter().map(|_| take()).collect();
    for (c, &id) in label.components.iter().zip(&component_ids) {
        out[0].push(record(id, Level::Component, &c.category, &c.bbox, c.text.as_deref(), None));
    }
    let mut line_ids = Vec::new();
    for (c, &parent) in label.components.iter().zip(&component_ids) {
        for l in &c.lines {
            let id = take();
            line_ids.push(id);
            out[1].push(record(id, Level::Line, "line", &l.bbox, Some(&l.text), Some(parent)));
        }
    }
    let mut word_ids = Vec::new();
    let lines = label.components.iter().flat_map(|c| &c.lines);
    for (l, &parent) in lines.clone().zip(&line_ids) {
        for w in &l.words {
            let id = take();
            word_ids.push(id);
            out[2].push(record(id, Level::Word, "word", &w.bbox, Some(&w.text), Some(parent)));
        }
    }
    for (w, &parent) in lines.flat_map(|l| &l.words).zip(&word_ids) {
        for ch in &w.chars {
            let id = take();
            out[3].push(record(id, Level::Character, "character", &ch.bbox, Some(&ch.text), Some(parent)));
        }
    }
    out
}

/// Component kind of a component-level category name.
pub fn component_kind(category: &str) -> Option<ComponentKind> {
    ComponentKind::from_name(category)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label() -> PageLabel {
        let ch = |x, t: &str| CharLabel {
            bbox: [x, 10, 5, 8],
            text: t.into(),
        };
        PageLabel {
            page: PageInfo {
                id: 7,
                file_name: "000007.png".into(),
                width: 100,
                height: 100,
                margin: 5,
                gutter: 2,
                seed: 1,
            },
            layout: LayoutLabel {
                mode: "flexible".into(),
                root: RegionLabel {
                    bbox: [5, 5, 90, 90],
                    split: None,
                    children: vec![],
                },
            },
            components: vec![
                ComponentLabel {
                    category: "Paragraph".into(),
                    region: [5, 5, 90, 90],
                    bbox: [10, 10, 16, 8],
                    text: Some("ab c".into()),
                    truncated: false,
                    style: None,
                    table: None,
                    figure: None,
                    lines: vec![LineLabel {
                        bbox: [10, 10, 16, 8],
                        text: "ab c".into(),
                        baseline: 17,
                        words: vec![
                            WordLabel {
                                bbox: [10, 10, 10, 8],
                                text: "ab".into(),
                                chars: vec![ch(10, "a"), ch(15, "b")],
                            },
                            WordLabel {
                                bbox: [21, 10, 5, 8],
                                text: "c".into(),
                                chars: vec![ch(21, "c")],
                            },
                        ],
                    }],
                },
                ComponentLabel {
                    category: "Figure".into(),
                    region: [5, 50, 90, 40],
                    bbox: [5, 50, 90, 40],
                    text: None,
                    truncated: false,
                    style: None,
                    table: None,
                    figure: None,
                    lines: vec![],
                },
            ],
        }
    }

    #[test]
    fn flatten_assigns_level_major_ids_and_parents() {
        let mut next = 1;
        let recs = flatten(&label(), &mut next);
        let ids: Vec<Vec<u64>> = recs.iter().map(|v| v.iter().map(|r| r.id).collect()).collect();
        assert_eq!(ids, vec![vec![1, 2], vec![3], vec![4, 5], vec![6, 7, 8]]);
        assert_eq!(recs[1][0].parent_id, Some(1));
        assert_eq!(recs[2][1].parent_id, Some(3));
        assert_eq!(recs[3][2].parent_id, Some(5));
        assert_eq!(recs[0][1].category_name, "Figure");
        assert!(recs[0].iter().all(|r| r.parent_id.is_none() && r.image_id == 7));
        assert_eq!(next, 9);
    }

    #[test]
    fn json_round_trips() {
        let l = label();
        let bytes = to_json_bytes(&l);
        assert!(bytes.ends_with(b"}\n"));
        let back: PageLabel = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, l);
        assert_eq!(to_json_bytes(&back), bytes);
    }

    #[test]
    fn layout_rebuilds() {
        let tree = label().layout_tree().unwrap();
        assert_eq!(tree.mode, LayoutMode::Flexible);
        assert_eq!(tree.root.rect, Rect::new(5, 5, 90, 90));
    }
}
