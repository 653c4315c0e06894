use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn salvetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salvetti")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("salvetti-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// CSV rows below the `# ` header.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn salvetti_a2_to_file() {
    let out = scratch("sal.json");
    let o = salvetti(&["salvetti", "--input", "braid:3", "--ell", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([6, 12, 6]));
    assert_eq!(v["euler_characteristic"], 0);
    assert_eq!(v["complex"]["cells"].as_array().unwrap().len(), 24);
}

#[test]
fn homology_of_a1() {
    let o = salvetti(&["homology", "--input", "braid:2", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    for method in ["cellular", "simplicial"] {
        let betti: Vec<&str> = r.iter().filter(|x| x[0] == method && x[2] != "0").map(|x| x[2].as_str()).collect();
        assert_eq!(betti, ["1", "1"], "{method}");
    }
}

#[test]
fn homology_of_a3_over_a_field() {
    let o = salvetti(&["homology", "--input", "braid:4", "--coefficients", "Fp:2"]);
    assert_eq!(o.status.code(), Some(0));
    let cell: Vec<String> = rows(&stdout(&o)).into_iter().filter(|x| x[0] == "cellular").map(|x| x[2].clone()).collect();
    assert_eq!(cell, ["1", "6", "11", "6"]);
}

#[test]
fn verify_a2_order_two_passes() {
    let o = salvetti(&["verify", "--input", "braid:3", "--ell", "2", "--seed", "7"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS  covector axioms"));
    assert!(text.contains("PASS  ∂² = 0"));
    assert!(text.contains("PASS  covectors = faces from circuits"));
    assert!(text.contains("PASS  cellular = simplicial homology"));
    assert!(!text.contains("FAIL"));
    assert!(text.trim_end().ends_with("all checks passed"));
}

#[test]
fn filtration_counts() {
    let o = salvetti(&["filtration", "--input", "braid:3"]);
    assert_eq!(o.status.code(), Some(0));
    let cells: Vec<String> = rows(&stdout(&o)).into_iter().map(|x| x[1].clone()).collect();
    assert_eq!(cells, ["6", "18", "24"]);
}

#[test]
fn pages_are_json_with_blocks() {
    let o = salvetti(&["pages", "--k-max", "2", "--coefficients", "Fp:3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["meta"]["conventions"]["koszul"], true);
}

#[test]
fn rational_entries_parse_exactly() {
    let path = scratch("third.json");
    std::fs::write(&path, r#"{"dim": 2, "normals": [["1/3", "0"], ["0", "2/7"], ["1/3", "-2/7"]]}"#).unwrap();
    let o = salvetti(&["faces", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["arrangement"]["normals"][0][0], "1/3");
    assert_eq!(v["arrangement"]["normals"][2][1], "-2/7");
    assert_eq!(v["counts"]["topes"], 6);
}

#[test]
fn input_errors_exit_two() {
    let zero = scratch("zero.json");
    std::fs::write(&zero, r#"{"dim": 2, "normals": [["0", "0"]]}"#).unwrap();
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"dim\": 2,\n \"normals\": [[\"x\", \"1\"]]}").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["faces", "--input", zero.to_str().unwrap()],
        vec!["faces", "--input", bad.to_str().unwrap()],
        vec!["faces", "--input", "braid:7"],
        vec!["salvetti", "--input", "braid:3", "--ell", "4"],
        vec!["pages", "--coefficients", "Z"],
        vec!["homology", "--input", "braid:6"],
        vec!["faces"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = salvetti(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["faces", "--input", "braid:4"][..],
        &["salvetti", "--input", "braid:3", "--ell", "2"],
        &["pages", "--k-max", "3", "--degrees", "0,1"],
        &["verify", "--input", "braid:3", "--seed", "11"],
    ] {
        let a = salvetti(args);
        let b = salvetti(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_command_has_a_metadata_header() {
    for args in [
        &["homology", "--input", "braid:2"][..],
        &["filtration", "--input", "braid:2"],
        &["verify", "--input", "braid:2"],
        &["symbols", "--k", "2"],
    ] {
        let text = stdout(&salvetti(args));
        assert!(text.starts_with("# salvetti "), "{args:?}");
        assert!(text.contains("# config: "));
        assert!(text.contains("\"normal_orientation\""));
    }
    for args in [&["faces", "--input", "braid:2"][..], &["salvetti", "--input", "braid:2"], &["pages", "--k-max", "1"]] {
        let v: Value = serde_json::from_str(&stdout(&salvetti(args))).unwrap();
        assert_eq!(v["meta"]["tool"], "salvetti");
        assert!(v["meta"]["config"]["koszul"].is_boolean());
        assert!(v["meta"]["conventions"]["normalization"].is_string());
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_salvetti"))
            .args(["homology", "--input", "braid:4", "--method", "cellular"])
            .env("SALVETTI_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, run("4").stdout);
    assert_eq!(run("many").status.code(), Some(2));
}
