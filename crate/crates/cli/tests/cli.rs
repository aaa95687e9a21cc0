use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn lamcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamcf"))
        .args(args)
        .env_remove("LAMCF_SEARCH_BOUND")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn cf_expand_rational() {
    let out = lamcf(&["cf", "expand", "355/113"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"prefix":[3,7,16],"kind":"finite"}"#
    );
}

#[test]
fn cf_expand_surds() {
    let v = stdout_json(&lamcf(&["cf", "expand", "(1 + sqrt(5))/2"]));
    assert_eq!(v, json!({"prefix": [], "period": [1], "kind": "periodic"}));
    let v = stdout_json(&lamcf(&["cf", "expand", "sqrt(2)"]));
    assert_eq!(v, json!({"prefix": [1], "period": [2], "kind": "periodic"}));
    let v = stdout_json(&lamcf(&["cf", "expand", r#"{"p":0,"q":1,"r":1,"D":7}"#]));
    assert_eq!(
        v,
        json!({"prefix": [2], "period": [1, 1, 1, 4], "kind": "periodic"})
    );
}

#[test]
fn cf_canon_round_trips_its_output() {
    let first = lamcf(&["cf", "canon", "[1, 2, (2, 2)]"]);
    assert_eq!(
        stdout_json(&first),
        json!({"prefix": [1], "period": [2], "kind": "periodic"})
    );
    let text = String::from_utf8(first.stdout).unwrap();
    let second = lamcf(&["cf", "canon", text.trim()]);
    assert_eq!(String::from_utf8(second.stdout).unwrap(), text);
}

#[test]
fn cf_eval_values() {
    let v = stdout_json(&lamcf(&["cf", "eval", "3,7,16"]));
    assert_eq!(
        (v["num"].clone(), v["den"].clone()),
        (json!(355), json!(113))
    );
    let v = stdout_json(&lamcf(&["cf", "eval", "[1, (2)]"]));
    assert_eq!(v["surd"], json!({"p": 0, "q": 1, "r": 1, "D": 2}));
    let v = stdout_json(&lamcf(&["cf", "eval", "[1, (2)]", "--depth", "3"]));
    assert_eq!(
        (v["num"].clone(), v["den"].clone(), v["depth"].clone()),
        (json!(17), json!(12), json!(3))
    );
}

#[test]
fn cf_equiv_exit_codes() {
    assert_eq!(
        lamcf(&["cf", "equiv", "[1, (2)]", "[2, (2)]"])
            .status
            .code(),
        Some(0)
    );
    let out = lamcf(&["cf", "equiv", "[1, (2)]", "[(1)]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out), json!({"decision": "NotEquivalent"}));
    let out = lamcf(&["cf", "equiv", "[1, 2, …]", "[5, 7, 9, …]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out), json!({"decision": "Unknown"}));
}

#[test]
fn cf_apply_action() {
    let v = stdout_json(&lamcf(&["cf", "apply", "1,1,0,1", "[1, (2)]"]));
    // 1 + √2 = [2; 2, 2, …] is purely periodic
    assert_eq!(v, json!({"prefix": [], "period": [2], "kind": "periodic"}));
    let out = lamcf(&["cf", "apply", "-1,0,0,1", "[1, (2)]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("ImageNotPositive"));
}

#[test]
fn gl2_commands() {
    let v = stdout_json(&lamcf(&["gl2", "classify", "2,3,1,2"]));
    assert_eq!(v["class"], json!("Hyperbolic"));
    let v = stdout_json(&lamcf(&["gl2", "axis", "2,3,1,2"]));
    assert_eq!(v["endpoints"][0], json!({"p": 0, "q": -1, "r": 1, "D": 3}));
    assert_eq!(v["endpoints"][1], json!({"p": 0, "q": 1, "r": 1, "D": 3}));
    assert!((v["length"].as_f64().unwrap() - 2.633916).abs() < 1e-6);
    let v = stdout_json(&lamcf(&["gl2", "fix", "1,1,0,1"]));
    assert_eq!(v, json!({"fixed_points": ["inf"]}));
    let v = stdout_json(&lamcf(&["gl2", "decompose", "2,3,1,2"]));
    assert_eq!(v, json!({"p0": 1, "terms": [1, 1]}));
    let out = lamcf(&["gl2", "classify", "0,1,1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("NotDeterminantOne"));
}

#[test]
fn gl2_member_exit_codes() {
    let out = lamcf(&["gl2", "member", "1,0,5,1", "--level", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"member": true, "level": 5}));
    assert_eq!(
        lamcf(&["gl2", "member", "2,3,1,2", "--level", "5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn genus_record() {
    let v = stdout_json(&lamcf(&["genus", "23"]));
    assert_eq!(
        v,
        json!({"level": 23, "index": 24, "cusps": 2, "elliptic2": 0, "elliptic3": 0, "genus": 2})
    );
    let out = lamcf(&["genus", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("InvalidLevel"));
}

#[test]
fn legendre_run_emits_lines() {
    let out = lamcf(&[
        "legendre",
        "run",
        "--p0",
        "1",
        "--steps",
        "4",
        "--pred",
        "hyperbolic",
        "--level",
        "23",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["k"], json!(1));
    assert_eq!(lines[0]["term"], json!(2));
    assert_eq!(
        lines[0]["gamma"],
        json!({"a": "1", "b": "3", "c": "1", "d": "2"})
    );
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["singleton_candidate"], json!((i + 1) % 2 == 0));
    }
}

#[test]
fn legendre_halt_keeps_partial_output() {
    let out = lamcf(&[
        "legendre", "run", "--p0", "1", "--steps", "5", "--pred", "mod:2:1", "--bound", "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["trace"], json!(3));
    assert_eq!(
        lines[1],
        json!({"error": "NoAdmissibleTerm", "detail": "no admissible term in [1, 50]"})
    );
}

#[test]
fn legendre_bound_from_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_lamcf"))
            .args([
                "legendre", "run", "--p0", "1", "--steps", "1", "--pred", "never",
            ])
            .env("LAMCF_SEARCH_BOUND", bound)
            .output()
            .unwrap()
    };
    let out = run("7");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stdout_json(&out)["detail"],
        json!("no admissible term in [1, 7]")
    );
    assert_eq!(run("zero").status.code(), Some(64));
}

#[test]
fn unknown_predicate_is_an_error() {
    let out = lamcf(&[
        "legendre", "run", "--p0", "1", "--steps", "1", "--pred", "prime",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("UnknownPredicate"));
}

#[test]
fn delta_commands() {
    let out = lamcf(&["delta", "check", "--genus", "2", "1/2", "1/2", "1/2", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        json!({"genus": 2, "delta": [1, 1, 1, 1], "areas": [1, 1, 1, 1], "total_area": 4})
    );
    let out = lamcf(&["delta", "check", "--genus", "2", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("SumMismatch"));
    let out = lamcf(&["delta", "check", "--level", "11", "2"]);
    assert_eq!(stdout_json(&out)["error"], json!("InvalidDeltaForLevel"));
    let out = lamcf(&["delta", "enumerate", "2"]);
    let parts: Vec<Value> = json_lines(&out)
        .into_iter()
        .map(|v| v["delta"].clone())
        .collect();
    assert_eq!(
        parts,
        vec![
            json!([4]),
            json!([3, 1]),
            json!([2, 2]),
            json!([2, 1, 1]),
            json!([1, 1, 1, 1])
        ]
    );
    assert_eq!(json_lines(&lamcf(&["delta", "enumerate", "3"])).len(), 22);
}

#[test]
fn invariant_pack_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, out: &Output| {
        let path = dir.path().join(name);
        fs::write(&path, &out.stdout).unwrap();
        path.to_str().unwrap().to_string()
    };
    let a = write(
        "a.json",
        &lamcf(&[
            "invariant",
            "pack",
            "--level",
            "23",
            "--delta",
            "2",
            "--theta",
            "[1, (2)]",
        ]),
    );
    let b = write(
        "b.json",
        &lamcf(&[
            "invariant",
            "pack",
            "--level",
            "23",
            "--delta",
            "2",
            "--theta",
            "[2, (2)]",
        ]),
    );
    let c = write(
        "c.json",
        &lamcf(&[
            "invariant",
            "pack",
            "--level",
            "23",
            "--delta",
            "1,1",
            "--theta",
            "[1, (2)]",
        ]),
    );
    let d = write(
        "d.json",
        &lamcf(&[
            "invariant",
            "pack",
            "--level",
            "29",
            "--delta",
            "2",
            "--theta",
            "[1, (2)]",
        ]),
    );

    let v: Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(
        v,
        json!({"level": 23, "theta": {"prefix": [1], "period": [2], "kind": "periodic"}, "delta": [4], "approximate": false})
    );

    let out = lamcf(&["invariant", "compare", &a, &b]);
    assert_eq!(
        (out.status.code(), stdout_json(&out)),
        (Some(0), json!({"decision": "Equal"}))
    );
    let out = lamcf(&["invariant", "compare", &a, &c]);
    assert_eq!(
        (out.status.code(), stdout_json(&out)),
        (Some(1), json!({"decision": "NotEqual"}))
    );
    let out = lamcf(&["invariant", "compare", &a, &d]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("LevelMismatch"));
    let out = lamcf(&["invariant", "compare", &a, "/nonexistent/x.json"]);
    assert_eq!(stdout_json(&out)["error"], json!("Io"));
}

#[test]
fn invariant_pack_from_stream_on_stdin() {
    let steps = lamcf(&[
        "legendre", "run", "--p0", "1", "--steps", "3", "--level", "23",
    ]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_lamcf"))
        .args([
            "invariant",
            "pack",
            "--level",
            "23",
            "--delta",
            "2",
            "--steps",
            "-",
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&steps.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["theta"]["prefix"].as_array().unwrap().len(), 4);
    assert_eq!(v["theta"]["kind"], json!("prefix"));
    assert_eq!(v["approximate"], json!(true));
    assert_eq!(v["delta"], json!([4]));
}

#[test]
fn render_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("axes.svg");
    let args = [
        "render", "axes", "2,3,1,2", "5,2,2,1", "--orbit", "1", "--x-min", "-4", "--x-max", "4",
        "--height", "2.5",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_lamcf"))
        .args(args)
        .arg("-o")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/axes.svg");
    assert_eq!(fs::read_to_string(&path).unwrap(), golden);
}

#[test]
fn render_rejects_parabolic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let out = Command::new(env!("CARGO_BIN_EXE_lamcf"))
        .args(["render", "axes", "1,1,0,1", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("NotHyperbolic"));
    assert!(!path.exists());
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(lamcf(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(lamcf(&["genus"]).status.code(), Some(64));
    assert_eq!(lamcf(&["genus", "-3"]).status.code(), Some(64));
    assert_eq!(lamcf(&["--help"]).status.code(), Some(0));
}

#[test]
fn run_is_callable_in_process() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lamcf_cli::run(
        ["lamcf", "cf", "expand", "7/3"],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(
        String::from_utf8(out).unwrap().trim(),
        r#"{"prefix":[2,3],"kind":"finite"}"#
    );
    assert_eq!(String::from_utf8(err).unwrap().trim(), "[2, 3]");
}
