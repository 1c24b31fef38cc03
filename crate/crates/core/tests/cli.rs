use hasse_witt::cli::run_command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut argv = vec!["hasse-witt"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    let json = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).expect("stdout is JSON") };
    (out.code, json, out.stderr)
}

#[test]
fn hilbert_example() {
    let (code, v, _) = run(&["hilbert", "--place", "p:7", "--a", "-1", "--b", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["symbol"], 1);
    assert_eq!(v["schema_version"], "1.0.0");
}

#[test]
fn hilbert_with_oracle() {
    let (code, v, _) = run(&["hilbert", "--place", "p:2", "--a", "2", "--b", "5", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["symbol"], v["oracle"]);
    assert_eq!(v["symbol"], -1);
}

#[test]
fn usage_errors_exit_2_and_name_the_field() {
    let (code, _, err) = run(&["hilbert", "--place", "p:0", "--a", "1", "--b", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--place"), "{err}");
    let (code, _, err) = run(&["hilbert", "--place", "p:7", "--a", "1/x", "--b", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--a"), "{err}");
    let (code, _, err) = run(&["hasse", "--place", "p:5", "--form", "1,0"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, err) = run(&["verify", "--suite", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("suite"), "{err}");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["sym-sign", "--place", "p:7", "--a", "diag:1,2", "--b", "{\"n\": 2}"]);
    assert_eq!(code, 2);
    assert!(err.contains("b"), "{err}");
}

#[test]
fn help_exits_0() {
    let out = run_command(["hasse-witt", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn square_class_and_character() {
    let (code, v, _) = run(&["square-class", "--place", "p:5", "--x", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], 2);
    assert_eq!(v["valuation"], 2);
    let (_, v, _) = run(&["square-class", "--place", "p:7", "--x", "15/7"]);
    assert_eq!(v["frac_part"], "1/7");
    let (_, v, _) = run(&["square-class", "--place", "p:2", "--x", "1/2", "--convention", "minus"]);
    assert!((v["character"][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn hasse_and_equiv_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("q.json");
    std::fs::write(&one, r#"{"place": "real", "coeffs": ["1", "-2", "3"]}"#).unwrap();
    let (code, v, _) = run(&["hasse", "--in", one.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["signature"], serde_json::json!([2, 1]));
    assert_eq!(v["hasse"], 1);

    let pair = dir.path().join("pair.json");
    std::fs::write(
        &pair,
        r#"[{"place": "p:7", "coeffs": ["1", "1"]}, {"place": "p:7", "coeffs": ["2", "1/2"]}]"#,
    )
    .unwrap();
    let (code, v, _) = run(&["equiv", "--in", pair.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], true);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"place": "p:4", "coeffs": ["1"]}"#).unwrap();
    assert_eq!(run(&["hasse", "--in", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["hasse", "--in", "/nonexistent/q.json"]).0, 2);
}

#[test]
fn gamma_and_epsilon() {
    let (code, v, _) = run(&["gamma", "--place", "real", "--form", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"]["eighth_root_index"], 4);
    let (code, v, _) = run(&["gamma", "--place", "p:7", "--form", "1,1", "--other", "7,1/7"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"]["epsilon"], -1);
    assert_eq!(v["check"]["matches"], true);
    // not in W^2
    let (code, _, err) = run(&["gamma", "--place", "p:7", "--form", "1", "--other", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("level"), "{err}");
}

#[test]
fn weil_equation() {
    let (code, v, _) = run(&["weil-eq", "--place", "p:5", "--form", "1", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let (code, v, _) = run(&["weil-eq", "--place", "p:7", "--form", "1,-1", "--m", "1", "--center", "1/7,0", "--mode", "grid"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"]["gamma"]["eighth_root_index"], 0);
    assert_eq!(run(&["weil-eq", "--place", "p:7", "--form", "1,-1", "--center", "1"]).0, 2);
}

#[test]
fn stationary_phase() {
    let (code, v, _) = run(&["stationary", "--phase", "x^3-3*x", "--p", "7", "--m", "1..3"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["critical_points"].as_array().unwrap().len(), 2);
    // a zero tolerance cannot be met: verification failure, not a usage error
    let (code, _, _) = run(&["stationary", "--phase", "x^3-3*x", "--p", "7", "--m", "1", "--tol", "0"]);
    assert_eq!(code, 1);
    assert_eq!(run(&["stationary", "--phase", "x^3", "--p", "5", "--m", "1"]).0, 2);
    assert_eq!(run(&["stationary", "--phase", "x^2", "--p", "5", "--m", "0..2"]).0, 2);
}

#[test]
fn sym_sign_forms() {
    let (code, v, _) = run(&["sym-sign", "--place", "p:7", "--a", "diag:7,7,1/49", "--b", "diag:1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"]["epsilon_pair"], -1);
    assert_eq!(v["check"]["relative_hasse"], -1);
    assert_eq!(v["stabilizer_hasse"], -1);

    let m = r#"{"n": 3, "entries": [["0","1","0"],["1","0","0"],["0","0","1"]]}"#;
    let (code, v, _) = run(&["sym-sign", "--place", "real", "--a", m, "--b", "diag:1,1,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"]["holds"], true);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("a.json");
    std::fs::write(&f, m).unwrap();
    let arg = format!("@{}", f.display());
    let (code, v2, _) = run(&["sym-sign", "--place", "real", "--a", &arg, "--b", "diag:1,1,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"], v2["check"]);
}

#[test]
fn orbits_two_per_class() {
    let (code, v, _) = run(&["orbits", "--n", "3", "--place", "p:5"]);
    assert_eq!(code, 0);
    for c in v["classes"].as_array().unwrap() {
        assert_eq!(c["count"], 2);
    }
    let (_, v, _) = run(&["orbits", "--n", "3", "--place", "real", "--det", "1"]);
    assert_eq!(v["classes"][0]["count"], 2);
    assert_eq!(run(&["orbits", "--n", "2", "--place", "p:5"]).0, 2);
}

#[test]
fn shintani_signs() {
    let (code, v, _) = run(&["shintani", "--n", "5", "--s", "0.3", "--check-signs"]);
    assert_eq!(code, 0);
    assert_eq!(v["sign_check"]["holds"], true);
    assert_eq!(v["sign_check"]["expected_c"], serde_json::json!([1, 1, -1, -1, 1, 1]));
    assert_eq!(v["matrix"]["entries"].as_array().unwrap().len(), 6);
    // s = 1 puts a cosine zero into c: the normalization is undefined
    assert_eq!(run(&["shintani", "--n", "3", "--s", "1", "--check-signs"]).0, 2);
}

#[test]
fn tate_places() {
    let (code, v, _) = run(&["tate", "--place", "p:5", "--s", "-0.5", "--twist", "u"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["character"]["twist"]["rep"], 2);
    let (code, _, _) = run(&["tate", "--place", "p:3", "--s", "-0.5", "--s-im", "0.7"]);
    assert_eq!(code, 0);
    let (code, v, _) = run(&["tate", "--place", "real", "--s", "-0.3"]);
    assert_eq!(code, 0);
    assert!(v["gamma_matrix"]["residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(run(&["tate", "--place", "p:5", "--s", "0.5"]).0, 2);
    assert_eq!(run(&["tate", "--place", "p:5", "--s", "-0.5", "--twist", "q"]).0, 2);
}

#[test]
fn sym3_mc_small_run_is_reproducible() {
    let args = ["sym3-mc", "--p", "3", "--s", "0.5", "--seed", "42", "--samples", "40000", "--compact"];
    let a = run_command(std::iter::once("hasse-witt").chain(args));
    let b = run_command(std::iter::once("hasse-witt").chain(args).chain(["--workers", "1"]));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["sym3-mc", "--p", "2", "--samples", "40000"]).0, 2);
}

#[test]
fn verify_single_suites() {
    let (code, v, _) = run(&["verify", "--suite", "signprop", "--n", "3", "--place", "p:7"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["counts"]["total"], 1);

    let (code, v, _) = run(&["verify", "--suite", "stationary", "--p", "7"]);
    assert_eq!(code, 0);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 3);
    assert!(cases.iter().all(|c| c["input"]["p"] == 7));
    let counts = &v["counts"];
    assert_eq!(counts["passed"].as_u64().unwrap() + counts["failed"].as_u64().unwrap(), counts["total"].as_u64().unwrap());
}

#[test]
fn verify_report_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let first = run_command(["hasse-witt", "verify", "--suite", "scaling", "--seed", "7", "--out", a.to_str().unwrap()]);
    let second = run_command(["hasse-witt", "verify", "--suite", "scaling", "--seed", "7", "--out", b.to_str().unwrap()]);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let parsed: Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(parsed["seed"], 7);
    assert!(parsed.get("wall_time_ms").is_none());
    // another seed draws other cases
    let other = run_command(["hasse-witt", "verify", "--suite", "scaling", "--seed", "8"]);
    assert_ne!(other.stdout, first.stdout);

    let timed = run(&["verify", "--suite", "hilbert", "--timing"]).1;
    assert!(timed["wall_time_ms"].as_f64().is_some());

    let bad = run_command(["hasse-witt", "verify", "--suite", "hilbert", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn workers_env_does_not_change_output() {
    let a = run_command(["hasse-witt", "verify", "--suite", "equivalence", "--workers", "1", "--compact"]);
    let b = run_command(["hasse-witt", "verify", "--suite", "equivalence", "--workers", "3", "--compact"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}
