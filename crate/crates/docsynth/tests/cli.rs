mod common;

use std::path::Path;
use std::process::{Command, Output};

fn docsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_docsynth")).args(args).output().unwrap()
}

fn write_config(dir: &Path, extra: &str) -> String {
    let a = common::assets_dir();
    let text = format!(
        r#"{{"count": 2, "workers": 1, {extra} "paths": {{"corpus": "{}", "fonts": "{}", "imagePool": "{}", "outputDir": "out"}}}}"#,
        a.join("corpus_vi.txt").display(),
        a.join("fonts").display(),
        a.join("images").display(),
    );
    let p = dir.join("cfg.json");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn generate_validate_stats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let out = docsynth(&["generate", "--config", &cfg, "--count", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pages/s"));
    let out_dir = dir.path().join("out");
    assert!(out_dir.join("images/000002.png").is_file());

    let v = docsynth(&["validate", "--dir", out_dir.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));

    let s = docsynth(&["stats", "--dir", out_dir.to_str().unwrap()]);
    assert_eq!(s.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(stats["images"], 3);

    let p = docsynth(&["preview", "--config", &cfg, "--index", "1"]);
    assert_eq!(p.status.code(), Some(0));
    assert!(out_dir.join("preview/000001_character.png").is_file());
}

#[test]
fn bad_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#""fontSizeRange": [31, 18],"#);
    let out = docsynth(&["generate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fontSizeRange"));
    let missing = docsynth(&["generate", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn missing_assets_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cfg.json");
    std::fs::write(&p, r#"{"count": 1, "paths": {"fonts": "nowhere"}}"#).unwrap();
    let out = docsynth(&["generate", "--config", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    assert_eq!(docsynth(&["generate", "--config", &cfg]).status.code(), Some(0));
    let coco = dir.path().join("out/coco_word.json");
    let text = std::fs::read_to_string(&coco).unwrap().replacen("\"iscrowd\":0", "\"iscrowd\":1", 1);
    std::fs::write(&coco, text).unwrap();
    let v = docsynth(&["validate", "--dir", dir.path().join("out").to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&v.stdout).contains("iscrowd"));
}
