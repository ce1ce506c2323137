//! COCO-style detection files, one per annotation level.
//!
//! Layout on disk: `{"images":[...],"annotations":[...],"categories":[...]}`
//! with one array element per line. Images come first because they are
//! known from the plan; annotations are then streamed page by page.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use docsynth_core::ComponentKind;
use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotationRecord, BBox, Level};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocoImage {
    pub id: u64,
    pub file_name: String,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocoCategory {
    pub id: u32,
    pub name: String,
    pub supercategory: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocoAnnotation {
    pub id: u64,
    pub image_id: u64,
    pub category_id: u32,
    pub bbox: BBox,
    pub area: u64,
    pub iscrowd: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocoDocument {
    pub images: Vec<CocoImage>,
    pub annotations: Vec<CocoAnnotation>,
    pub categories: Vec<CocoCategory>,
}

pub fn coco_file_name(level: Level) -> String {
    format!("coco_{}.json", level.name())
}

/// Component level: the five kinds, ids 1..=5. Other levels: one category
/// named after the level.
pub fn categories(level: Level) -> Vec<CocoCategory> {
    match level {
        Level::Component => ComponentKind::ALL
            .iter()
            .map(|k| CocoCategory {
                id: k.category_id(),
                name: k.name().to_string(),
                supercategory: "component".into(),
            })
            .collect(),
        _ => vec![CocoCategory {
            id: 1,
            name: level.name().to_string(),
            supercategory: level.name().to_string(),
        }],
    }
}

/// COCO projection of a record. `None` for a category the level does not
/// define.
pub fn project(r: &AnnotationRecord) -> Option<CocoAnnotation> {
    let category_id = match r.level {
        Level::Component => ComponentKind::from_name(&r.category_name)?.category_id(),
        l if r.category_name == l.name() => 1,
        _ => return None,
    };
    Some(CocoAnnotation {
        id: r.id,
        image_id: r.image_id,
        category_id,
        bbox: r.bbox,
        area: r.bbox[2] as u64 * r.bbox[3] as u64,
        iscrowd: 0,
        text: r.text.clone(),
        parent_id: r.parent_id,
    })
}

fn write_line<W: Write, T: Serialize>(out: &mut W, first: &mut bool, item: &T) -> io::Result<()> {
    out.write_all(if *first { b"\n" } else { b",\n" })?;
    *first = false;
    serde_json::to_writer(&mut *out, item).map_err(io::Error::other)
}

fn close_array<W: Write>(out: &mut W, empty: bool) -> io::Result<()> {
    out.write_all(if empty { b"]" } else { b"\n]" })
}

/// Single-writer streaming emitter for one level file.
pub struct CocoWriter<W: Write> {
    out: W,
    level: Level,
    first: bool,
    count: u64,
}

impl<W: Write> CocoWriter<W> {
    pub fn new(mut out: W, level: Level, images: &[CocoImage]) -> io::Result<Self> {
        out.write_all(b"{\"images\":[")?;
        let mut first = true;
        for img in images {
            write_line(&mut out, &mut first, img)?;
        }
        close_array(&mut out, images.is_empty())?;
        out.write_all(b",\"annotations\":[")?;
        Ok(Self {
            out,
            level,
            first: true,
            count: 0,
        })
    }

    pub fn push(&mut self, record: &AnnotationRecord) -> io::Result<()> {
        debug_assert_eq!(record.level, self.level);
        let ann = project(record).ok_or_else(|| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("category {} undefined at {} level", record.category_name, self.level),
            )
        })?;
        self.count += 1;
        write_line(&mut self.out, &mut self.first, &ann)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn finish(mut self) -> io::Result<W> {
        close_array(&mut self.out, self.first)?;
        self.out.write_all(b",\"categories\":[")?;
        let cats = categories(self.level);
        let mut first = true;
        for c in &cats {
            write_line(&mut self.out, &mut first, c)?;
        }
        close_array(&mut self.out, cats.is_empty())?;
        self.out.write_all(b"}\n")?;
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Writes a whole level file at once.
pub fn emit_coco(path: &Path, level: Level, images: &[CocoImage], records: &[AnnotationRecord]) -> io::Result<()> {
    let file = io::BufWriter::new(std::fs::File::create(path)?);
    let mut w = CocoWriter::new(file, level, images)?;
    for r in records {
        w.push(r)?;
    }
    w.finish()?;
    Ok(())
}

pub fn read_coco(path: &Path) -> io::Result<CocoDocument> {
    let file = io::BufReader::new(std::fs::File::open(path)?);
    serde_json::from_reader(file).map_err(io::Error::other)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocoIssue {
    DuplicateImageId(u64),
    DuplicateCategoryId(u32),
    DuplicateAnnotationId(u64),
    UnknownImage { annotation: u64, image: u64 },
    UnknownCategory { annotation: u64, category: u32 },
    EmptyBox { annotation: u64 },
    OutOfBounds { annotation: u64 },
    AreaMismatch { annotation: u64 },
    Crowd { annotation: u64 },
    /// Component-level records have no parent; all others have one.
    ParentPresence { annotation: u64 },
}

impl fmt::Display for CocoIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocoIssue::DuplicateImageId(id) => write!(f, "duplicate image id {id}"),
            CocoIssue::DuplicateCategoryId(id) => write!(f, "duplicate category id {id}"),
            CocoIssue::DuplicateAnnotationId(id) => write!(f, "duplicate annotation id {id}"),
            CocoIssue::UnknownImage { annotation, image } => {
                write!(f, "annotation {annotation}: unknown image {image}")
            }
            CocoIssue::UnknownCategory { annotation, category } => {
                write!(f, "annotation {annotation}: unknown category {category}")
            }
            CocoIssue::EmptyBox { annotation } => write!(f, "annotation {annotation}: zero width or height"),
            CocoIssue::OutOfBounds { annotation } => write!(f, "annotation {annotation}: bbox outside its image"),
            CocoIssue::AreaMismatch { annotation } => write!(f, "annotation {annotation}: area is not w × h"),
            CocoIssue::Crowd { annotation } => write!(f, "annotation {annotation}: iscrowd must be 0"),
            CocoIssue::ParentPresence { annotation } => {
                write!(f, "annotation {annotation}: parent_id presence does not match level")
            }
        }
    }
}

/// Checks ids, references, bounds and areas. Empty iff valid.
pub fn validate_annotations(doc: &CocoDocument) -> Vec<CocoIssue> {
    let mut issues = Vec::new();
    let mut images = BTreeMap::new();
    for img in &doc.images {
        if images.insert(img.id, img).is_some() {
            issues.push(CocoIssue::DuplicateImageId(img.id));
        }
    }
    let mut cats = BTreeSet::new();
    for c in &doc.categories {
        if !cats.insert(c.id) {
            issues.push(CocoIssue::DuplicateCategoryId(c.id));
        }
    }
    let component_level = doc
        .categories
        .iter()
        .any(|c| ComponentKind::from_name(&c.name).is_some());
    let mut ids = BTreeSet::new();
    for a in &doc.annotations {
        let annotation = a.id;
        if !ids.insert(a.id) {
            issues.push(CocoIssue::DuplicateAnnotationId(a.id));
        }
        if !cats.contains(&a.category_id) {
            issues.push(CocoIssue::UnknownCategory {
                annotation,
                category: a.category_id,
            });
        }
        let [x, y, w, h] = a.bbox;
        if w == 0 || h == 0 {
            issues.push(CocoIssue::EmptyBox { annotation });
        }
        match images.get(&a.image_id) {
            None => issues.push(CocoIssue::UnknownImage {
                annotation,
                image: a.image_id,
            }),
            Some(img) => {
                if x as u64 + w as u64 > img.width as u64 || y as u64 + h as u64 > img.height as u64 {
                    issues.push(CocoIssue::OutOfBounds { annotation });
                }
            }
        }
        if a.area != w as u64 * h as u64 {
            issues.push(CocoIssue::AreaMismatch { annotation });
        }
        if a.iscrowd != 0 {
            issues.push(CocoIssue::Crowd { annotation });
        }
        if a.parent_id.is_some() == component_level {
            issues.push(CocoIssue::ParentPresence { annotation });
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img() -> Vec<CocoImage> {
        vec![CocoImage {
            id: 0,
            file_name: "000000.png".into(),
            width: 50,
            height: 40,
        }]
    }

    fn rec(id: u64, level: Level, cat: &str, parent: Option<u64>) -> AnnotationRecord {
        AnnotationRecord {
            id,
            image_id: 0,
            level,
            category_name: cat.into(),
            bbox: [1, 2, 10, 5],
            text: None,
            parent_id: parent,
        }
    }

    fn emit(level: Level, images: &[CocoImage], recs: &[AnnotationRecord]) -> Vec<u8> {
        let mut w = CocoWriter::new(Vec::new(), level, images).unwrap();
        for r in recs {
            w.push(r).unwrap();
        }
        w.finish().unwrap()
    }

    #[test]
    fn empty_batch_is_valid() {
        let bytes = emit(Level::Word, &[], &[]);
        let doc: CocoDocument = serde_json::from_slice(&bytes).unwrap();
        assert!(doc.images.is_empty() && doc.annotations.is_empty());
        assert_eq!(doc.categories.len(), 1);
        assert!(validate_annotations(&doc).is_empty());
    }

    #[test]
    fn fresh_document_is_valid() {
        let bytes = emit(
            Level::Component,
            &img(),
            &[rec(1, Level::Component, "Table", None), rec(2, Level::Component, "Formula", None)],
        );
        let doc: CocoDocument = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(doc.annotations[0].category_id, 3);
        assert_eq!(doc.annotations[1].area, 50);
        assert!(validate_annotations(&doc).is_empty());
        assert!(!bytes.windows(2).any(|w| w == b" \n"));
    }

    #[test]
    fn duplicate_id_is_named() {
        let bytes = emit(
            Level::Line,
            &img(),
            &[rec(4, Level::Line, "line", Some(1)), rec(4, Level::Line, "line", Some(1))],
        );
        let doc: CocoDocument = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(validate_annotations(&doc), vec![CocoIssue::DuplicateAnnotationId(4)]);
    }

    #[test]
    fn bad_references_and_bounds_reported() {
        let mut doc: CocoDocument = serde_json::from_slice(&emit(
            Level::Component,
            &img(),
            &[rec(1, Level::Component, "Title", None)],
        ))
        .unwrap();
        let mut a = doc.annotations[0].clone();
        a.id = 2;
        a.image_id = 9;
        a.category_id = 6;
        a.bbox = [45, 0, 10, 0];
        a.parent_id = Some(1);
        doc.annotations.push(a);
        let issues = validate_annotations(&doc);
        assert!(issues.contains(&CocoIssue::UnknownImage { annotation: 2, image: 9 }));
        assert!(issues.contains(&CocoIssue::UnknownCategory { annotation: 2, category: 6 }));
        assert!(issues.contains(&CocoIssue::EmptyBox { annotation: 2 }));
        assert!(issues.contains(&CocoIssue::AreaMismatch { annotation: 2 }));
        assert!(issues.contains(&CocoIssue::ParentPresence { annotation: 2 }));
    }

    #[test]
    fn sub_level_rejects_kind_names() {
        assert!(project(&rec(1, Level::Word, "Title", Some(1))).is_none());
        assert!(project(&rec(1, Level::Component, "word", None)).is_none());
    }
}
