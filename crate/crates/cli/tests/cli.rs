//! CLI behavior: exit codes, JSON schema, determinism, text/JSON agreement.

use std::process::{Command, Output};

fn lpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn parse_echoes_canonical_form() {
    let out = lpi(&["parse", "--poly", "x1*x2 - x2*x1", "--ring", "gf3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["canonical"]["terms"], 2);
    // −1 ≡ 2 mod 3 in the canonical print
    assert!(v["canonical"]["text"].as_str().unwrap().contains("2*"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["parse", "--poly", "x1 -", "--ring", "q"],
        vec!["parse", "--poly", "1 - x1", "--ring", "gf9"],
        vec!["check-lpi", "--algebra", "cube:2:q", "--poly", "1"],
        vec!["hartley", "--group", "nope", "--field", "q"],
        vec!["hartley", "--group", "c4", "--field", "z"],
        vec!["parse", "--poly", "x1 - x1", "--ring", "q"], // zero polynomial
    ] {
        let out = lpi(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
    // clap usage errors are also exit 2
    let out = lpi(&["standard", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn engine_errors_exit_3() {
    // exhaustive over an infinite ring
    let out = lpi(&[
        "check-lpi",
        "--algebra",
        "matrix:2:q",
        "--poly",
        "1 - x1^2",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // derivation of an inadmissible polynomial
    let out = lpi(&[
        "derive",
        "--poly",
        "1 - x1*x2*x1^-1*x2^-1",
        "--ring",
        "q",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // budget exceeded before any work
    let out = lpi(&[
        "standard",
        "--n",
        "4",
        "--algebra",
        "matrix:2:gf2",
        "--exhaustive",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failing_verdicts_exit_1_with_witness() {
    let out = lpi(&[
        "check-pi",
        "--algebra",
        "matrix:2:gf2",
        "--poly",
        "x1*x2 - x2*x1",
        "--exhaustive",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdicts"][0]["status"]["kind"], "fails");
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 1);
    assert_eq!(witnesses[0]["assignment"].as_array().unwrap().len(), 2);
}

#[test]
fn json_schema_fields_present() {
    let out = lpi(&[
        "check-lpi",
        "--algebra",
        "tri:2:gf2",
        "--poly",
        "1 - x1^2",
        "--exhaustive",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    for key in ["command", "inputs", "seed", "verdicts", "construction", "witnesses", "stats"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "check-lpi");
    assert_eq!(v["seed"], 0);
    assert!(v["stats"]["evaluations"].as_u64().unwrap() >= 2);
    assert!(v["stats"]["elapsed_ms"].is_null());
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "counterexample",
        "--n",
        "2",
        "--field",
        "gf5",
        "--trials",
        "200",
        "--seed",
        "7",
        "--json",
    ];
    let a = lpi(&args);
    let b = lpi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same argv + seed must give identical JSON");
}

#[test]
fn job_count_does_not_change_output() {
    let base = [
        "check-lpi",
        "--algebra",
        "matrix:2:gf5",
        "--poly",
        "1 - x1*x2*x1^-1*x2^-1",
        "--trials",
        "100",
        "--seed",
        "3",
        "--json",
    ];
    let mut with_jobs = base.to_vec();
    with_jobs.extend(["--jobs", "8"]);
    let a = lpi(&base);
    let b = lpi(&with_jobs);
    assert_eq!(a.stdout, b.stdout, "verdicts must not depend on --jobs");
}

#[test]
fn different_seed_prints_in_report() {
    let out = lpi(&[
        "check-gi",
        "--algebra",
        "matrix:2:gf5",
        "--word",
        "x1*x2*x1^-1*x2^-1",
        "--trials",
        "50",
        "--seed",
        "13",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["seed"], 13);
    assert_eq!(v["witnesses"][0]["seed"], 13);
}

#[test]
fn text_and_json_verdicts_agree() {
    let args_text = [
        "verify-theorem1",
        "--algebra",
        "tri:2:gf2",
        "--poly",
        "1 - x1^2",
        "--exhaustive",
    ];
    let text = lpi(&args_text);
    assert_eq!(text.status.code(), Some(0));
    let rendered = String::from_utf8_lossy(&text.stdout);
    assert!(rendered.contains("premise: Holds"));
    assert!(rendered.contains("f2_layer: Holds"));
    assert!(rendered.contains("f_layer: Holds"));

    let mut args_json = args_text.to_vec();
    args_json.push("--json");
    let json = lpi(&args_json);
    let v = stdout_json(&json);
    for verdict in v["verdicts"].as_array().unwrap() {
        assert_eq!(verdict["status"]["kind"], "holds");
    }
}

#[test]
fn verify_exits_1_when_premise_fails() {
    let out = lpi(&[
        "verify-theorem1",
        "--algebra",
        "matrix:2:gf3",
        "--poly",
        "1 - x1^4",
        "--trials",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rendered = String::from_utf8_lossy(&out.stdout);
    assert!(rendered.contains("vacuous"));
}

#[test]
fn derive_json_matches_documented_values() {
    let out = lpi(&["derive", "--poly", "1 - x1^4", "--ring", "q", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let c = &v["construction"];
    assert_eq!(c["l"], 4);
    assert_eq!(c["r"], 4);
    assert_eq!(c["deg_f2"], 9);
    assert_eq!(c["d"], 19);
    assert_eq!(c["f"].as_array().unwrap().len(), 4);
}

#[test]
fn group_table_files_load() {
    // write C3 as a table file and use it through grpalg
    let path = std::env::temp_dir().join("lpi_cli_c3.tbl");
    std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let spec = format!("grpalg:file:{}:gf2", path.display());
    let out = lpi(&[
        "check-pi",
        "--algebra",
        &spec,
        "--poly",
        "x1*x2 - x2*x1",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
