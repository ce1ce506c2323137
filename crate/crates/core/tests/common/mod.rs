#![allow(dead_code)]

use docsynth_core::{FontFace, FontSet, TextCorpus};

pub const SANS: &[u8] = include_bytes!("../../../../assets/fonts/DejaVuSans.ttf");
pub const SANS_BOLD: &[u8] = include_bytes!("../../../../assets/fonts/DejaVuSans-Bold.ttf");
pub const SERIF: &[u8] = include_bytes!("../../../../assets/fonts/DejaVuSerif.ttf");
pub const CORPUS_VI: &[u8] = include_bytes!("../../../../assets/corpus_vi.txt");
pub const CORPUS_EN: &[u8] = include_bytes!("../../../../assets/corpus_en.txt");

pub fn fonts() -> FontSet {
    FontSet::new(vec![
        FontFace::parse(SANS, "DejaVuSans.ttf").unwrap(),
        FontFace::parse(SANS_BOLD, "DejaVuSans-Bold.ttf").unwrap(),
        FontFace::parse(SERIF, "DejaVuSerif.ttf").unwrap(),
    ])
    .unwrap()
}

pub fn sans_only() -> FontSet {
    FontSet::new(vec![FontFace::parse(SANS, "DejaVuSans.ttf").unwrap()]).unwrap()
}

pub fn corpus() -> TextCorpus {
    let mut bytes = CORPUS_VI.to_vec();
    bytes.extend_from_slice(CORPUS_EN);
    TextCorpus::parse(&bytes, "vi").unwrap()
}
