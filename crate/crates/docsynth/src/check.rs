//! Validation and statistics over an existing output directory.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use docsynth_core::validate_layout;
use serde::Serialize;

use crate::annotation::{bbox, flatten, rect, AnnotationRecord, BBox, ComponentLabel, Level, PageLabel};
use crate::coco::{coco_file_name, project, read_coco, validate_annotations, CocoDocument};

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CheckError + '_ {
    move |source| CheckError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn union(boxes: impl Iterator<Item = BBox>) -> Option<BBox> {
    boxes.map(|b| rect(&b)).reduce(|a, b| a.union(&b)).map(|r| bbox(&r))
}

fn inside(inner: &BBox, outer: &BBox) -> bool {
    rect(outer).contains(&rect(inner))
}

/// Containment chain and union equalities of one component.
fn check_component(page: u64, i: usize, c: &ComponentLabel, problems: &mut Vec<String>) {
    let mut fail = |what: String| problems.push(format!("page {page} component {i} ({}): {what}", c.category));
    if !inside(&c.bbox, &c.region) {
        fail("bbox outside region".into());
    }
    if c.bbox[2] == 0 || c.bbox[3] == 0 {
        fail("empty bbox".into());
    }
    for (li, l) in c.lines.iter().enumerate() {
        if !inside(&l.bbox, &c.bbox) {
            fail(format!("line {li} outside component"));
        }
        if union(l.words.iter().map(|w| w.bbox)) != Some(l.bbox) {
            fail(format!("line {li} is not the union of its words"));
        }
        for (wi, w) in l.words.iter().enumerate() {
            if !inside(&w.bbox, &l.bbox) {
                fail(format!("line {li} word {wi} outside line"));
            }
            if union(w.chars.iter().map(|ch| ch.bbox)) != Some(w.bbox) {
                fail(format!("line {li} word {wi} is not the union of its characters"));
            }
            if w.chars.iter().any(|ch| !inside(&ch.bbox, &w.bbox)) {
                fail(format!("line {li} word {wi} has a character outside it"));
            }
        }
    }
    let text_kind = matches!(c.category.as_str(), "Title" | "Paragraph");
    if text_kind && union(c.lines.iter().map(|l| l.bbox)) != Some(c.bbox) {
        fail("bbox is not the union of its lines".into());
    }
    if let Some(t) = &c.table {
        if union(t.cells.iter().copied()) != Some(c.bbox) {
            fail("table bbox is not its cell grid".into());
        }
    }
}

/// Structural checks of one label document.
pub fn check_label(label: &PageLabel) -> Vec<String> {
    let mut problems = Vec::new();
    let id = label.page.id;
    match (label.spec(), label.layout_tree()) {
        (Some(spec), Some(tree)) => {
            for v in validate_layout(&tree, &spec) {
                problems.push(format!("page {id} layout: {v}"));
            }
        }
        _ => problems.push(format!("page {id}: unreadable page spec or layout")),
    }
    for (i, c) in label.components.iter().enumerate() {
        check_component(id, i, c, &mut problems);
    }
    problems
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub pages: u64,
    pub records_by_level: BTreeMap<String, u64>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

fn sorted_labels(dir: &Path) -> Result<Vec<PathBuf>, CheckError> {
    let labels = dir.join("labels");
    let mut files: Vec<PathBuf> = fs::read_dir(&labels)
        .map_err(io_err(&labels))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn read_label(path: &Path) -> Result<Result<PageLabel, String>, CheckError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    Ok(serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display())))
}

/// Runs every check over `dir`: each COCO file on its own, parent links
/// across levels, every label document, image files against the COCO image
/// table, and agreement between flattened labels and the COCO files.
pub fn validate_output_dir(dir: &Path) -> Result<ValidationReport, CheckError> {
    let mut report = ValidationReport::default();
    let mut docs: Vec<Option<CocoDocument>> = Vec::new();
    for level in Level::ALL {
        let path = dir.join(coco_file_name(level));
        match read_coco(&path) {
            Ok(doc) => {
                for issue in validate_annotations(&doc) {
                    report.problems.push(format!("{}: {issue}", coco_file_name(level)));
                }
                report
                    .records_by_level
                    .insert(level.name().to_string(), doc.annotations.len() as u64);
                docs.push(Some(doc));
            }
            Err(e) => {
                report.problems.push(format!("{}: {e}", path.display()));
                docs.push(None);
            }
        }
    }

    for level in &Level::ALL[1..] {
        let parent = level.parent().expect("sub-level");
        let (Some(doc), Some(pdoc)) = (&docs[level.index()], &docs[parent.index()]) else {
            continue;
        };
        let parents: BTreeMap<u64, u64> = pdoc.annotations.iter().map(|a| (a.id, a.image_id)).collect();
        for a in &doc.annotations {
            match a.parent_id.and_then(|p| parents.get(&p)) {
                Some(&img) if img == a.image_id => {}
                _ => report
                    .problems
                    .push(format!("{}: annotation {} has no {parent} parent on its image", coco_file_name(*level), a.id)),
            }
        }
    }

    let mut flat: [Vec<AnnotationRecord>; 4] = Default::default();
    let mut next_id = 1;
    let mut label_ids = BTreeSet::new();
    for path in sorted_labels(dir)? {
        let label = match read_label(&path)? {
            Ok(l) => l,
            Err(e) => {
                report.problems.push(e);
                continue;
            }
        };
        report.pages += 1;
        label_ids.insert(label.page.id);
        report.problems.extend(check_label(&label));
        let image = dir.join("images").join(&label.page.file_name);
        match image::image_dimensions(&image) {
            Ok(dims) if dims == (label.page.width, label.page.height) => {}
            Ok(dims) => report
                .problems
                .push(format!("{}: size {dims:?} differs from label", image.display())),
            Err(e) => report.problems.push(format!("{}: {e}", image.display())),
        }
        for (acc, recs) in flat.iter_mut().zip(flatten(&label, &mut next_id)) {
            acc.extend(recs);
        }
    }

    if let Some(Some(doc)) = docs.first() {
        let coco_ids: BTreeSet<u64> = doc.images.iter().map(|i| i.id).collect();
        if coco_ids != label_ids {
            report.problems.push("label files and COCO image table list different pages".into());
        }
    }
    for level in Level::ALL {
        let Some(doc) = &docs[level.index()] else { continue };
        let expected: Vec<_> = flat[level.index()].iter().filter_map(project).collect();
        if expected != doc.annotations {
            report
                .problems
                .push(format!("{}: records differ from the flattened labels", coco_file_name(level)));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DirStats {
    pub images: u64,
    pub components_by_category: BTreeMap<String, u64>,
    pub records_by_level: BTreeMap<String, u64>,
    pub mean_components_per_page: f64,
    pub font_size_range: Option<[u32; 2]>,
    pub truncated_components: u64,
    /// Contents of `stats.json` from the generating run, if present.
    pub run: Option<serde_json::Value>,
}

/// Summarizes an output directory from its COCO and label files.
pub fn dir_stats(dir: &Path) -> Result<DirStats, CheckError> {
    let mut s = DirStats::default();
    for level in Level::ALL {
        let path = dir.join(coco_file_name(level));
        let doc = read_coco(&path).map_err(io_err(&path))?;
        s.records_by_level
            .insert(level.name().to_string(), doc.annotations.len() as u64);
        if level == Level::Component {
            s.images = doc.images.len() as u64;
            let names: BTreeMap<u32, String> = doc.categories.iter().map(|c| (c.id, c.name.clone())).collect();
            for name in names.values() {
                s.components_by_category.insert(name.clone(), 0);
            }
            for a in &doc.annotations {
                if let Some(name) = names.get(&a.category_id) {
                    *s.components_by_category.entry(name.clone()).or_default() += 1;
                }
            }
        }
    }
    let total: u64 = s.components_by_category.values().sum();
    s.mean_components_per_page = if s.images > 0 { total as f64 / s.images as f64 } else { 0.0 };
    for path in sorted_labels(dir)? {
        let Ok(label) = read_label(&path)? else { continue };
        for c in &label.components {
            s.truncated_components += u64::from(c.truncated);
            if let Some(st) = &c.style {
                let r = s.font_size_range.get_or_insert([st.font_size, st.font_size]);
                r[0] = r[0].min(st.font_size);
                r[1] = r[1].max(st.font_size);
            }
        }
    }
    let run = dir.join("stats.json");
    if let Ok(bytes) = fs::read(&run) {
        s.run = serde_json::from_slice(&bytes).ok();
    }
    Ok(s)
}
