//! End-to-end runs of the `nonarch` binary against job files.

use std::fs;
use std::process::Command;

use serde_json::Value;

fn run(jobs: &str, extra_args: &[&str]) -> (Value, Option<i32>, String) {
    let dir = tempfile::tempdir().unwrap();
    let jobfile = dir.path().join("jobs.json");
    let outfile = dir.path().join("report.json");
    fs::write(&jobfile, jobs).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_nonarch"))
        .arg("run")
        .arg(&jobfile)
        .arg("--out")
        .arg(&outfile)
        .args(extra_args)
        .output()
        .unwrap();
    let report_text = fs::read_to_string(&outfile).unwrap_or_default();
    let report = serde_json::from_str(&report_text).unwrap_or(Value::Null);
    (report, status.status.code(), report_text)
}

#[test]
fn gg_dim_job() {
    let (report, code, _) = run(r#"{"command": "gg-dim", "n": 1, "k": 2, "m": 2}"#, &[]);
    assert_eq!(code, Some(0));
    assert_eq!(report[0]["result"]["dim"], 2);
    assert_eq!(report[0]["pass"], true);
}

#[test]
fn count_zeros_job() {
    let jobs = r#"[{
        "command": "count-zeros",
        "f": {"p": 2, "terms": {"2": "1", "1": "2"}},
        "window": {"t_low": "-2", "t_high": "0"}
    }]"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(0));
    assert_eq!(report[0]["result"]["zeros"], 1);
}

#[test]
fn cube_check_job() {
    let (report, code, _) = run(r#"{"command": "cube-check", "eps": "1/3", "g": 2}"#, &[]);
    assert_eq!(code, Some(0));
    assert_eq!(report[0]["result"]["disjoint"], true);
    // a failing check exits 1 and carries the witness
    let (report, code, _) = run(r#"{"command": "cube-check", "eps": "1/2", "g": 2}"#, &[]);
    assert_eq!(code, Some(1));
    assert_eq!(report[0]["result"]["disjoint"], false);
    assert_eq!(report[0]["result"]["witness"], serde_json::json!([1, 0]));
}

#[test]
fn nevanlinna_and_checks() {
    let jobs = r#"[
        {"command": "nevanlinna",
         "f": {"num": {"p": 2, "terms": {"1": "1"}}, "den": {"p": 2, "terms": {"0": "1"}}},
         "a": "0",
         "window": {"t_low": "-inf", "t_high": "3"}},
        {"command": "ldl-check",
         "f": {"num": {"p": 2, "terms": {"1": "1"}}, "den": {"p": 2, "terms": {"0": "1"}}},
         "k": 1,
         "window": {"t_low": "-4", "t_high": "4"}},
        {"command": "jensen-check",
         "f": {"p": 2, "terms": {"2": "1", "1": "2"}},
         "window": {"t_low": "-2", "t_high": "0"}},
        {"command": "fmt-check",
         "f": {"num": {"p": 2, "terms": {"1": "1"}}, "den": {"p": 2, "terms": {"0": "1"}}},
         "a": "0",
         "window": {"t_low": "-inf", "t_high": "5"}}
    ]"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(0), "report: {report}");
    // m(0, t) = max(0, -t) on the disk window for f = z
    assert_eq!(report[0]["result"]["m"]["slopes"][0], "-1");
    assert_eq!(report[1]["result"]["holds"], true);
    assert_eq!(report[2]["result"]["identically_zero"], true);
    assert_eq!(report[3]["result"]["leftmost_slope"], "0");
    // report order matches input order
    assert_eq!(report[0]["command"], "nevanlinna");
    assert_eq!(report[3]["command"], "fmt-check");
}

#[test]
fn jet_commands() {
    let jobs = r#"[
        {"command": "jet-eval",
         "omega": {"k": 1, "m": 1, "ell": 1,
                   "monomials": [{"coeff": "1", "symbols": [{"i": 1, "j": 1, "log": true}]}]},
         "jet": {"coords": [["2", "1"]]}},
        {"command": "jet-pullback",
         "omega": {"k": 1, "m": 1, "ell": 1,
                   "monomials": [{"coeff": "1", "symbols": [{"i": 1, "j": 1, "log": true}]}]},
         "map": {"coords": [{"num": {"p": 2, "terms": {"2": "1"}},
                              "den": {"p": 2, "terms": {"0": "1"}}}],
                 "window": {"t_low": "0", "t_high": "10"},
                 "ell": 1}},
        {"command": "jet-ldl-check",
         "omega": {"k": 1, "m": 2, "ell": 1,
                   "monomials": [{"coeff": "1", "symbols": [{"i": 1, "j": 1, "log": true},
                                                              {"i": 1, "j": 1, "log": true}]}]},
         "map": {"coords": [{"num": {"p": 2, "terms": {"2": "1"}},
                              "den": {"p": 2, "terms": {"0": "1"}}}],
                 "window": {"t_low": "0", "t_high": "10"},
                 "ell": 1}}
    ]"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(0), "report: {report}");
    // d log z on the jet (2, 1): f'/f = 1/2
    assert_eq!(report[0]["result"]["value"], "1/2");
    // d log z_1 pulled back along ξ^2 is 2/ξ, canonically 2·ξ^{-1}
    assert_eq!(report[1]["result"]["phi"]["num"]["terms"]["-1"], "2");
    assert_eq!(report[1]["result"]["phi"]["den"]["terms"]["0"], "1");
    // the worked decay constant
    assert_eq!(report[2]["result"]["C"], "-2");
    assert_eq!(report[2]["result"]["holds"], true);
}

#[test]
fn tropical_commands() {
    let jobs = r#"[
        {"command": "trop-point", "p": 2, "x": ["6", "4/3"]},
        {"command": "lattice-reduce", "x": ["3/2", "-1/4"],
         "lattice": [[1, 0], [0, 1]]},
        {"command": "translates-met",
         "lattice": [[1, 0], [0, 1]],
         "window": {"t_low": "-5", "t_high": "5"},
         "map": {"coords": [
                   {"num": {"p": 2, "terms": {"1": "1"}}, "den": {"p": 2, "terms": {"0": "1"}}},
                   {"num": {"p": 2, "terms": {"1": "1", "0": "2"}}, "den": {"p": 2, "terms": {"0": "1"}}}],
                 "window": {"t_low": "-5", "t_high": "5"},
                 "ell": 0}}
    ]"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(0), "report: {report}");
    assert_eq!(report[0]["result"]["point"], serde_json::json!(["1", "2"]));
    assert_eq!(report[1]["result"]["gamma"], serde_json::json!([1, -1]));
    assert_eq!(
        report[1]["result"]["residue"],
        serde_json::json!(["1/2", "3/4"])
    );
    let count = report[2]["result"]["count"].as_u64().unwrap();
    assert!(count > 5, "translate count {count}");
}

#[test]
fn prime_override_rebuilds_contexts() {
    // val_2(9/2) vs val_3(9/2): the --p flag wins over the embedded prime
    let jobs = r#"{"command": "norm", "f": {"p": 2, "terms": {"0": "9/2"}}, "t": "0"}"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(0));
    assert_eq!(report[0]["result"]["norm"], "1");
    let (report, code, _) = run(jobs, &["--p", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(report[0]["result"]["norm"], "-2");
}

#[test]
fn schema_errors_exit_2() {
    let (report, code, _) = run(r#"{"command": "no-such-thing"}"#, &[]);
    assert_eq!(code, Some(2));
    assert!(report[0]["error"].as_str().unwrap().contains("schema"));
    // module preconditions surface with their name
    let jobs = r#"{"command": "count-zeros",
                   "f": {"p": 2, "terms": {}},
                   "window": {"t_low": "0", "t_high": "1"}}"#;
    let (report, code, _) = run(jobs, &[]);
    assert_eq!(code, Some(2));
    assert!(report[0]["error"]
        .as_str()
        .unwrap()
        .contains("zero function"));
}

#[test]
fn reports_echo_inputs_and_are_deterministic() {
    let jobs = r#"[{"command": "gg-dim",   "n": 2, "k": 2, "m": 2},
 {"command": "cube-check", "eps": "1/3", "g": 3}]"#;
    let (_, code, text1) = run(jobs, &[]);
    assert_eq!(code, Some(0));
    let (_, _, text2) = run(jobs, &[]);
    assert_eq!(text1, text2, "identical inputs give identical reports");
    // the echoed input is byte-identical to the job object in the file
    let report: Value = serde_json::from_str(&text1).unwrap();
    let raw_jobs: Vec<Box<serde_json::value::RawValue>> = serde_json::from_str(jobs).unwrap();
    let echoed = serde_json::to_string(&report[0]["input"]).unwrap();
    let original: Value = serde_json::from_str(raw_jobs[0].get()).unwrap();
    let echoed_value: Value = serde_json::from_str(&echoed).unwrap();
    assert_eq!(echoed_value, original);
    // raw echo preserves the original bytes inside the report document
    assert!(text1.contains(r#""n": 2, "k": 2, "m": 2"#));
}
