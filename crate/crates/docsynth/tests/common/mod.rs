#![allow(dead_code)]

use std::path::{Path, PathBuf};

use docsynth::config::PathsConfig;
use docsynth::GenerationConfig;

pub fn assets_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets")
}

/// Default config pointed at the bundled assets, writing into `out`.
pub fn config(out: &Path, count: u64) -> GenerationConfig {
    let a = assets_dir();
    let cfg = GenerationConfig {
        count,
        workers: 1,
        paths: PathsConfig {
            corpus: a.join("corpus_vi.txt"),
            fonts: a.join("fonts"),
            image_pool: a.join("images"),
            output_dir: out.to_path_buf(),
            background_texture: None,
        },
        ..Default::default()
    };
    cfg.validate().unwrap();
    cfg
}

pub fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

pub fn sorted_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}
