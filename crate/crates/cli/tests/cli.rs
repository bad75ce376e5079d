//! End-to-end tests of the binary: exit codes, output formats, scope
//! validation, and byte-identical output across worker counts.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z4lee"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn construct_single2_m5_json() {
    let out = run(&["construct", "--m", "5", "--set", "single:2", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["codewords"], 512);
    assert_eq!(v["d_lee"], 6);
    assert_eq!(v["k1"], 4);
    assert_eq!(v["k2"], 1);
    assert_eq!(v["oracle"]["status"], "pass");
}

#[test]
fn construct_pair_m3_distribution() {
    let out = run(&["construct", "--m", "3", "--set", "pair:0,2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dist: Vec<(u64, u64)> = v["distribution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect();
    assert_eq!(dist, vec![(0, 1), (2, 15), (4, 15), (6, 1)]);
}

#[test]
fn construct_even_m_is_exploratory() {
    let out = run(&["construct", "--m", "4", "--set", "single:0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("oracle: none"));
    assert!(stdout(&out).contains("even m"));
}

#[test]
fn construct_csv_weight_table() {
    let out = run(&["construct", "--m", "3", "--set", "pair:0,2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.starts_with("lee_weight,frequency\n"));
    assert!(s.contains("2,15\n"));
}

#[test]
fn construct_zero_code_reports_no_distance() {
    let out = run(&["construct", "--m", "3", "--set", "single:0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("zero code"));
}

#[test]
fn construct_poly_override_keeps_distribution() {
    // weight distribution is invariant under the basic irreducible choice
    let a = run(&["construct", "--m", "3", "--set", "pair:0,2", "--format", "csv"]);
    let b = run(&[
        "construct", "--m", "3", "--set", "pair:0,2", "--format", "csv", "--poly", "0xd",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["construct", "--m", "5", "--set", "triple:1"][..],
        &["construct", "--m", "16", "--set", "single:0"][..],
        &["construct", "--m", "5", "--set", "single:2", "--poly", "0xZZ"][..],
        &["construct", "--m", "3", "--set", "single:2", "--format", "bogus"][..],
        &["construct", "--m", "1", "--set", "single:2"][..], // empty defining set
        &["construct", "--m", "5", "--set", "single:2", "--workers", "0"][..],
        &["verify", "--m", "3", "theorem1"][..],
        &["verify", "--m", "4", "lemma4"][..],
        &["verify", "--m", "5", "theorem9"][..],
        &["verify", "--m", "11", "table2"][..],
        &["batch", "--m", "3,5", "--subjects", ""][..],
        &["batch", "--m", "4", "--subjects", "lemma4"][..],
        &["batch", "--m", "3", "--subjects", "theorem1"][..], // out of scope cell
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "args={args:?} stderr={}", stderr(&out));
    }
}

#[test]
fn verify_theorem1_m5_passes() {
    let out = run(&["verify", "--m", "5", "theorem1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let s = stdout(&out);
    assert_eq!(s.matches("PASS theorem1/").count(), 4);
}

#[test]
fn verify_json_report_shape() {
    let out = run(&["verify", "--m", "3", "--format", "json", "lemma4"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    for r in arr {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["m"], 3);
        assert!(r["subject"].as_str().unwrap().starts_with("lemma4/"));
        assert!(r.get("diffs").is_some());
        assert!(r.get("runtime_ms").is_some());
    }
}

#[test]
fn batch_json_summary() {
    let out = run(&[
        "batch", "--m", "3,5,7", "--subjects", "lemma4,theorem2", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    assert!(cells.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("z4lee-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("construct.json");
    let out = run(&[
        "construct", "--m", "3", "--set", "pair:0,2", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn output_is_byte_identical_across_workers_and_runs() {
    let args = |w: &str| {
        vec![
            "construct".to_string(),
            "--m".into(),
            "5".into(),
            "--set".into(),
            "complement:1".into(),
            "--format".into(),
            "json".into(),
            "--workers".into(),
            w.to_string(),
        ]
    };
    let one = run(&args("1").iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let four = run(&args("4").iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let again = run(&args("4").iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(stdout(&four), stdout(&again));
}
