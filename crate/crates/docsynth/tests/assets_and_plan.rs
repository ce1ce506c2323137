mod common;

use std::io::Write;

use docsynth::assets::{load_corpus, load_fonts, load_image_pool, AssetError};
use docsynth::config::ModeSetting;
use docsynth::plan::plan_jobs;
use docsynth_core::fill::{wrap_text, FillParams};
use docsynth_core::layout::LayoutMode;
use docsynth_core::{Rect, Typesetter};

#[test]
fn blank_lines_are_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.txt");
    std::fs::write(&p, "một câu\n\n  hai câu  \n").unwrap();
    let c = load_corpus(&p, "vi").unwrap();
    assert_eq!(c.sentences(), ["một câu", "hai câu"]);
    assert_eq!(c.language_tag(), "vi");
}

#[test]
fn invalid_utf8_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.txt");
    std::fs::write(&p, b"ok\nfine\nbad \xff\xfe here\n").unwrap();
    match load_corpus(&p, "vi") {
        Err(e @ AssetError::Corpus { .. }) => {
            let msg = e.to_string();
            assert!(msg.contains("c.txt:3"), "{msg}");
        }
        other => panic!("{:?}", other.map(|c| c.sentences().len())),
    }
}

#[test]
fn empty_corpus_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.txt");
    std::fs::write(&p, "\n \n").unwrap();
    assert!(matches!(load_corpus(&p, "vi"), Err(AssetError::Corpus { .. })));
}

#[test]
fn ten_thousand_line_corpus_matches_line_scan() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.txt");
    let mut f = std::io::BufWriter::new(std::fs::File::create(&p).unwrap());
    for i in 0..10_000u32 {
        match i % 7 {
            0 => writeln!(f).unwrap(),
            1 => writeln!(f, "   ").unwrap(),
            2 => write!(f, "câu số {i}\r\n").unwrap(),
            _ => writeln!(f, "dòng {i} có vài từ").unwrap(),
        }
    }
    drop(f);
    // independent count: lines holding any non-whitespace byte
    let bytes = std::fs::read(&p).unwrap();
    let expected = bytes
        .split(|&b| b == b'\n')
        .filter(|l| l.iter().any(|b| !b.is_ascii_whitespace()))
        .count();
    assert_eq!(load_corpus(&p, "vi").unwrap().sentences().len(), expected);
}

#[test]
fn one_font_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(common::assets_dir().join("fonts/DejaVuSans.ttf"), dir.path().join("a.ttf")).unwrap();
    let fonts = load_fonts(dir.path()).unwrap();
    assert_eq!(fonts.set.len(), 1);
    assert!(fonts.skipped.is_empty());
}

#[test]
fn empty_font_directory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(load_fonts(dir.path()), Err(AssetError::NoFonts { .. })));
}

#[test]
fn broken_fonts_are_listed_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(common::assets_dir().join("fonts/DejaVuSerif.ttf"), dir.path().join("b.ttf")).unwrap();
    std::fs::write(dir.path().join("a.ttf"), b"not a font").unwrap();
    let fonts = load_fonts(dir.path()).unwrap();
    assert_eq!(fonts.set.len(), 1);
    assert_eq!(fonts.skipped.len(), 1);
    assert!(fonts.skipped[0].path.ends_with("a.ttf"));

    std::fs::remove_file(dir.path().join("b.ttf")).unwrap();
    match load_fonts(dir.path()) {
        Err(e @ AssetError::NoFonts { .. }) => assert!(e.to_string().contains("a.ttf")),
        _ => panic!("expected NoFonts"),
    }
}

#[test]
fn bundled_fonts_cover_the_bundled_corpora() {
    let fonts = load_fonts(&common::assets_dir().join("fonts")).unwrap();
    let ts = Typesetter::new(&fonts.set);
    let region = Rect::new(0, 0, 4000, 100_000);
    for file in ["corpus_vi.txt", "corpus_en.txt"] {
        let corpus = load_corpus(&common::assets_dir().join(file), "x").unwrap();
        let text = corpus.sentences().join(" ");
        for (id, _) in fonts.set.faces() {
            let w = wrap_text(&ts, &text, &region, id, 24, &FillParams::default(), None);
            assert!(!w.truncated(), "{file} in font {id:?}");
        }
    }
    assert_eq!(ts.missing_glyphs(), 0);
    assert_eq!(ts.fallback_substitutions(), 0);
}

#[test]
fn bundled_images_decode() {
    let lib = load_image_pool(&common::assets_dir().join("images")).unwrap();
    assert!(lib.len() >= 5);
    assert!(lib.pool.assets.iter().all(|a| a.width > 0 && a.height > 0));
    let names: Vec<_> = lib.pool.assets.iter().map(|a| a.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn ten_thousand_planned_pages_within_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = common::config(dir.path(), 10_000);
    cfg.page_width_range = [1500, 2500];
    cfg.page_height_range = [1500, 2500];
    let plan = plan_jobs(&cfg);
    assert_eq!(plan.jobs.len(), 10_000);
    let (mut fixed, mut wmin, mut wmax) = (0, u32::MAX, 0);
    for (i, job) in plan.jobs.iter().enumerate() {
        assert_eq!(job.index, i as u64);
        assert!((1500..=2500).contains(&job.spec.width));
        assert!((1500..=2500).contains(&job.spec.height));
        wmin = wmin.min(job.spec.width);
        wmax = wmax.max(job.spec.width);
        fixed += (job.mode == LayoutMode::FixedColumn) as u32;
    }
    assert!(wmin < 1520 && wmax > 2480);
    // mixed at ratio 0.5: within 4 sigma of 5000
    assert!((fixed as i32 - 5000).abs() < 200, "{fixed}");

    cfg.mode = ModeSetting::Flexible;
    assert!(plan_jobs(&cfg).jobs.iter().all(|j| j.mode == LayoutMode::Flexible));
}

#[test]
fn master_seed_changes_the_plan() {
    let dir = tempfile::tempdir().unwrap();
    let a = common::config(dir.path(), 20);
    let mut b = a.clone();
    b.master_seed = 1;
    assert_ne!(plan_jobs(&a), plan_jobs(&b));
}
