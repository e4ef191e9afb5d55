use std::process::{Command, Output};

fn pieri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pieri")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pieri(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn polynomial_commands() {
    assert_eq!(stdout(&["E", "--eta", "0,1", "--params", "std"]), "z2");
    assert_eq!(stdout(&["Estar", "--eta", "1"]), "z1 - 1");
    assert_eq!(stdout(&["E", "--eta", "0,0,0"]), "1");
    assert_eq!(stdout(&["E", "--eta", "1,0", "--params", "inv"]), "z1 + ((t - 1)/(q*t - 1))*z2");
}

#[test]
fn expand_commands() {
    assert_eq!(stdout(&["expand", "--op", "e1", "--eta", "0,0"]), "E(1,0): 1\nE(0,1): (q*t - t)/(q*t - 1)");
    assert_eq!(stdout(&["expand", "--op", "zi", "--i", "2", "--eta", "0,0"]), "E(0,1): 1");
    assert_eq!(stdout(&["expand", "--op", "e1", "--eta", "0"]), "E(1): 1");
    let std = stdout(&["expand", "--op", "e1", "--eta", "0,0", "--params", "std"]);
    assert_eq!(std, "E(1,0): 1\nE(0,1): (q - 1)/(q*t - 1)");
}

#[test]
fn expand_json_schema() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["expand", "--op", "e1", "--eta", "0,0", "--format", "json"])).unwrap();
    assert_eq!(v["params"], "inv");
    assert_eq!(v["basis"], "E");
    assert_eq!(v["source"], serde_json::json!([0, 0]));
    assert_eq!(v["terms"][1]["comp"], serde_json::json!([0, 1]));
    assert_eq!(v["terms"][1]["coeff"], "(q*t - t)/(q*t - 1)");
}

#[test]
fn scalar_commands() {
    assert_eq!(stdout(&["binom", "--nu", "1,0", "--eta", "0,0"]), "1");
    assert_eq!(stdout(&["binom", "--nu", "2,0", "--eta", "0,1"]), "0");
    assert_eq!(stdout(&["keta", "--eta", "0,1"]), "(q*t - 1)/t");
    assert_eq!(stdout(&["jack", "--alpha", "2", "--op", "e1", "--eta", "0,0"]), "E(1,0): 1\nE(0,1): 2/3");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pieri(&["E", "--eta", "1,x"]).status.code(), Some(2));
    assert_eq!(pieri(&["expand", "--op", "zi", "--eta", "0,0"]).status.code(), Some(2));
    assert_eq!(pieri(&["expand", "--op", "en1", "--eta", "3"]).status.code(), Some(2));
    assert_eq!(pieri(&["jack", "--alpha", "0", "--eta", "0"]).status.code(), Some(2));
    assert_eq!(pieri(&["verify", "--suites", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = pieri(&["verify", "--suites", "e1", "--n", "2", "--max-modulus", "3", "--mode", "symbolic"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("10 passed, 0 failed"));

    let bad = pieri(&["verify", "--suites", "eigen", "--n", "2", "--max-modulus", "2", "--colength", "printed-minus"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn verify_sampled_json_lists_points() {
    let out = stdout(&[
        "verify",
        "--suites",
        "lemma1",
        "--n",
        "3",
        "--max-modulus",
        "2",
        "--mode",
        "sampled",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, reports) = lines.split_last().unwrap();
    assert_eq!(summary["summary"]["failed"], 0);
    for r in reports {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["seed"], 7);
        assert_eq!(r["points"].as_array().unwrap().len(), 5);
    }
    let again = stdout(&[
        "verify",
        "--suites",
        "lemma1",
        "--n",
        "3",
        "--max-modulus",
        "2",
        "--mode",
        "sampled",
        "--seed",
        "7",
        "--format",
        "json",
        "--jobs",
        "1",
    ]);
    assert_eq!(out, again);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(stdout(&["cache", "warm", "--cache-dir", d, "--n", "2", "--max-modulus", "2"]).starts_with("warmed 12"));
    assert!(stdout(&["cache", "stats", "--cache-dir", d]).starts_with("12 records"));
    assert_eq!(stdout(&["E", "--eta", "1,0", "--cache-dir", d]), stdout(&["E", "--eta", "1,0"]));
    let ok = pieri(&["verify", "--suites", "e1", "--n", "2", "--max-modulus", "2", "--cache-dir", d]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&["cache", "clear", "--cache-dir", d]).starts_with("removed"));
    assert!(stdout(&["cache", "stats", "--cache-dir", d]).starts_with("0 records"));
}
