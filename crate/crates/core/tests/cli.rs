use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use fuzzy_depth::io::{read_dataset, BAND_CSV_HEADER};
use fuzzy_depth::median::median_si;
use fuzzy_depth::Backend;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-depth"))
        .args(args)
        .output()
        .unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn depths(out: &Output) -> Vec<f64> {
    stdout_json(out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["depth"].as_f64().unwrap())
        .collect()
}

#[test]
fn projection_depth_of_two_point_sample() {
    let out = run(&[
        "depth",
        "--data",
        &fx("two_points_1_3.json"),
        "--query",
        &fx("two_points_1_3_query.json"),
        "--method",
        "projection",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d = depths(&out);
    assert!(
        (d[0] - 1.0).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12,
        "{d:?}"
    );
    let first = &stdout_json(&out)[0];
    assert_eq!(first["method"], "projection");
    assert_eq!(first["index"], 0);
}

#[test]
fn simplicial_depth_with_jump_cdf_as_csv() {
    let out = run(&[
        "depth",
        "--cdf",
        &fx("jump_cdf.json"),
        "--query",
        &fx("jump_cdf_query.json"),
        "--method",
        "fsimplicial",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("index,method,depth,witness_u,witness_alpha")
    );
    let d: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(
        (d[0] - 0.6558).abs() < 1e-9 && (d[1] - 0.5).abs() < 1e-9,
        "{d:?}"
    );
}

#[test]
fn tukey_depth_of_point_mass_item_is_one() {
    let out = run(&[
        "depth",
        "--data",
        &fx("single.json"),
        "--query",
        &fx("single.json"),
        "--method",
        "tukey",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(depths(&out), vec![1.0]);
}

fn band_rows(text: &str) -> Vec<Vec<f64>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(BAND_CSV_HEADER));
    lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn band_csv_of_both_fixtures() {
    let out = run(&["band", "--data", &fx("flat_band.json")]);
    assert_eq!(out.status.code(), Some(0));
    for row in band_rows(std::str::from_utf8(&out.stdout).unwrap()) {
        assert_eq!(&row[1..], &[4.0, 5.0, -5.0, -4.0]);
    }
    let out = run(&[
        "median",
        "--method",
        "band",
        "--data",
        &fx("sloped_band.json"),
    ]);
    let rows = band_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 101);
    for row in rows {
        let a = row[0];
        let want = [5.0 - a, 8.0 - a, -6.0 - a, -4.0];
        for (got, want) in row[1..].iter().zip(want) {
            assert!((got - want).abs() < 1e-12, "alpha {a}: {row:?}");
        }
    }
}

#[test]
fn band_alias_matches_median_band() {
    let a = run(&["band", "--data", &fx("sloped_band.json")]);
    let b = run(&[
        "median",
        "--data",
        &fx("sloped_band.json"),
        "--method",
        "band",
        "--format",
        "csv",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn grzegorzewski_median_of_two_points() {
    let out = run(&[
        "median",
        "--data",
        &fx("two_points_0_2.json"),
        "--method",
        "gr",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let item = &doc["items"][0];
    assert_eq!(item["kind"], "grid");
    assert!(item["lower"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v.as_f64() == Some(0.0)));
    assert!(item["upper"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v.as_f64() == Some(2.0)));
}

#[test]
fn exported_median_reingests_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("si.json");
    let out = run(&[
        "median",
        "--data",
        &fx("sloped_band.json"),
        "--method",
        "si",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let back = read_dataset(&path).unwrap().numbers().unwrap().remove(0);
    let sample = read_dataset(&fixture("sloped_band.json"))
        .unwrap()
        .to_sample()
        .unwrap();
    let grid = sample.grid().clone();
    let direct = median_si(&Backend::Sample(sample), &grid);
    assert_eq!(back.lower(), direct.lower());
    assert_eq!(back.upper(), direct.upper());
    assert_eq!(back.grid().levels(), direct.grid().levels());
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&p1, &p2] {
        let out = run(&[
            "verify",
            "--data",
            &fx("flat_band.json"),
            "--trials",
            "200",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (a, b) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(a, b);
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["pool_size"].as_u64().unwrap() >= 200);
}

#[test]
fn verify_flags_the_jump_cdf_exception() {
    let out = run(&["verify", "--cdf", &fx("jump_cdf.json"), "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let prop = report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "simplicial_depth_medians")
        .unwrap();
    assert_eq!(prop["status"], "documented_exception");
}

#[test]
fn verify_skips_projection_for_degenerate_data() {
    let out = run(&["verify", "--data", &fx("single.json"), "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let prop = report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "projection_depth_median")
        .unwrap();
    assert_eq!(prop["status"], "skipped");
    assert_eq!(prop["detail"], "degenerate");
}

#[test]
fn invalid_input_exits_with_two() {
    let out = run(&[
        "depth",
        "--data",
        &fx("not_nested.json"),
        "--query",
        &fx("single.json"),
        "--method",
        "tukey",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("item 1") && err.contains("not nested"),
        "{err}"
    );

    let out = run(&[
        "depth",
        "--data",
        "/nonexistent.json",
        "--query",
        &fx("single.json"),
        "--method",
        "tukey",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "depth",
        "--data",
        &fx("single.json"),
        "--query",
        &fx("single.json"),
        "--method",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--data", &fx("single.json"), "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unmet_preconditions_exit_with_three() {
    let out = run(&[
        "depth",
        "--data",
        &fx("single.json"),
        "--query",
        &fx("single.json"),
        "--method",
        "projection",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "depth",
        "--cdf",
        &fx("jump_cdf.json"),
        "--query",
        &fx("jump_cdf_query.json"),
        "--method",
        "l1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_run_leaves_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&[
        "depth",
        "--data",
        &fx("single.json"),
        "--query",
        &fx("single.json"),
        "--method",
        "projection",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!path.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
