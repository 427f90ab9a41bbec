use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str], dir: &Path) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dtuple"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"));
    (out.status.code().unwrap(), v)
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn search_tiny_bound_is_empty() {
    let d = tmp();
    let (code, v) = run(&["search", "--max-u-height", "1", "--cache", "c.json"], d.path());
    assert_eq!(code, 0);
    assert_eq!(v["outputs"], json!([]));
    assert_eq!(fs::read_to_string(d.path().join("c.json")).unwrap().trim(), "[]");
}

#[test]
fn search_is_idempotent_across_worker_counts() {
    let d = tmp();
    let (code, first) = run(&["search", "--max-u-height", "25", "--jobs", "3", "--cache", "c.json"], d.path());
    assert_eq!(code, 0);
    let cache1 = fs::read(d.path().join("c.json")).unwrap();
    let (_, second) = run(&["search", "--max-u-height", "25", "--jobs", "1", "--cache", "c.json"], d.path());
    assert_eq!(fs::read(d.path().join("c.json")).unwrap(), cache1);
    assert_eq!(first["outputs"], second["outputs"]);
    let pts = first["outputs"].as_array().unwrap();
    assert!(!pts.is_empty());
    let heights: Vec<u64> = pts.iter().map(|p| p["height"].as_u64().unwrap()).collect();
    assert!(heights.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn default_cache_path_is_in_working_dir() {
    let d = tmp();
    let (code, _) = run(&["search", "--max-u-height", "3"], d.path());
    assert_eq!(code, 0);
    assert!(d.path().join("cpoints.json").exists());
}

#[test]
fn corrupt_cache_is_rejected() {
    let d = tmp();
    fs::write(
        d.path().join("c.json"),
        r#"[{"u": "1/2", "v": "1/3", "height": 3, "provenance": "searched"}]"#,
    )
    .unwrap();
    let (code, v) = run(&["search", "--max-u-height", "2", "--cache", "c.json"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "CorruptCache");
}

#[test]
fn families_worked_example() {
    let d = tmp();
    let (code, v) = run(&["families", "--u", "-119/128", "--v", "-135/169", "--family", "1"], d.path());
    assert_eq!(code, 0);
    let out = &v["outputs"][0];
    assert_eq!(out["triple"], json!(["30464/2223", "22815/5168", "361/7956"]));
    assert_eq!(out["strong"], json!([true, true, false]));
    assert_eq!(out["special"], json!(true));
    assert_eq!(out["certificate"]["witnesses"].as_array().unwrap().len(), 3);
}

#[test]
fn families_off_curve_warns() {
    let d = tmp();
    let (code, v) = run(&["families", "--u", "1/2", "--v", "1/3"], d.path());
    assert_eq!(code, 2);
    assert_eq!(v["outputs"].as_array().unwrap().len(), 3);
    assert!(v["outputs"][0]["pairs"].is_array());
}

#[test]
fn families_undefined_element_fails() {
    let d = tmp();
    let (code, v) = run(&["families", "--u", "1", "--v", "1/3", "--family", "1"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "UndefinedElement");
    assert!(v["failures"][0]["message"].as_str().unwrap().contains("u-1"));
}

#[test]
fn decimal_input_is_rejected() {
    let d = tmp();
    let (code, v) = run(&["families", "--u", "0.5", "--v", "1/3"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "Parse");
}

#[test]
fn extend_worked_example() {
    let d = tmp();
    let (code, v) = run(
        &["extend", "--u", "-119/128", "--v", "-135/169", "--family", "1", "--n-from", "0", "--n-to", "2"],
        d.path(),
    );
    assert_eq!(code, 0);
    let outs = v["outputs"].as_array().unwrap();
    assert_eq!(outs[0]["kind"], "partial");
    assert_eq!(outs[0]["dropped"][0]["candidate"], "d4");
    let full: Vec<&Value> = outs.iter().filter(|o| o["kind"] == "sextuple").collect();
    assert!(!full.is_empty());
    assert_eq!(full[0]["witnesses"].as_array().unwrap().len(), 15);
    assert_eq!(full[0]["elems"].as_array().unwrap().len(), 6);
}

#[test]
fn extend_reports_mirrored_n_as_collision() {
    let d = tmp();
    let (code, v) = run(
        &["extend", "--u", "-119/128", "--v", "-135/169", "--n-from", "-2", "--n-to", "1"],
        d.path(),
    );
    assert_eq!(code, 0);
    let collisions: Vec<&Value> = v["outputs"].as_array().unwrap().iter().filter(|o| o["kind"] == "collision").collect();
    assert_eq!(collisions.len(), 2);
}

#[test]
fn extend_off_curve_is_not_special() {
    let d = tmp();
    let (code, v) = run(&["extend", "--u", "1/2", "--v", "1/3"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "NotSpecial");
}

#[test]
fn iso_transports_match_expected_families() {
    let d = tmp();
    for (w, fam) in [("W1", "F2"), ("W2", "F3"), ("P", "F1")] {
        let (code, v) = run(&["iso", "--u", "-119/128", "--v", "-135/169", "--family", "1", "--w", w], d.path());
        assert_eq!(code, 0, "{w}: {v}");
        assert_eq!(v["outputs"][0]["expected_family"], fam);
        assert_eq!(v["outputs"][0]["matches"], true);
    }
}

#[test]
fn iso_from_every_family() {
    let d = tmp();
    for (fam, w1, w2) in [("2", "F1", "F3"), ("3", "F1", "F2")] {
        for (w, want) in [("W1", w1), ("W2", w2)] {
            let (code, v) = run(&["iso", "--u", "-119/128", "--v", "-135/169", "--family", fam, "--w", w], d.path());
            assert_eq!(code, 0, "{fam} {w}: {v}");
            assert_eq!(v["outputs"][0]["expected_family"], want);
            assert_eq!(v["outputs"][0]["sign_rule"], "matched_family");
        }
    }
}

#[test]
fn iso_at_undefined_point_fails() {
    let d = tmp();
    let (code, v) = run(&["iso", "--u", "3", "--v", "0", "--family", "1", "--w", "W1"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "UndefinedElement");
}

#[test]
fn verify_corpus() {
    let d = tmp();
    let file = d.path().join("t.json");
    fs::write(
        &file,
        r#"[["11/192","35/192","155/27","512/27","1235/48","180873/16"],
            {"tuple": ["1","3","8","120","777480/8288641"]}]"#,
    )
    .unwrap();
    let (code, v) = run(&["verify", "--file", "t.json"], d.path());
    assert_eq!(code, 0);
    assert_eq!(v["outputs"][0]["certificate"]["witnesses"].as_array().unwrap().len(), 15);

    fs::write(&file, r#"[["1","2","3"]]"#).unwrap();
    let (code, v) = run(&["verify", "--file", "t.json"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["outputs"][0]["pass"], false);
}

#[test]
fn verify_missing_file_is_io_error() {
    let d = tmp();
    let (code, v) = run(&["verify", "--file", "nope.json"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "IoError");
}

#[test]
fn demo_passes_and_is_reproducible() {
    let d = tmp();
    let (code, mut a) = run(&["demo"], d.path());
    assert_eq!(code, 0, "{a}");
    assert!(a["outputs"].as_array().unwrap().iter().all(|o| o["pass"] == true));
    let (_, mut b) = run(&["demo"], d.path());
    a["timings_ms"] = json!({});
    b["timings_ms"] = json!({});
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn bad_flags_exit_nonzero_with_json() {
    let d = tmp();
    let (code, v) = run(&["families", "--u", "1/2"], d.path());
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["kind"], "InvalidArgument");
    let (code, _) = run(&["search", "--max-u-height", "0", "--cache", "c.json"], d.path());
    assert_eq!(code, 1);
}
