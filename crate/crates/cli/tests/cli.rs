use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const C_ROWS_SWAPPED: &str = "1+t, t, 1+t; t, 1+t, 1+t; 1+t, 1+t, t";
const C_BAD_DET: &str = "1, 1+t, t; 1, t^-1, 1+t^-1; 1+t^-1, 1+t^-1, t^-1";

fn hnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn check_ids(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_default_passes() {
    let o = hnn(&["verify", "--json", "--no-timestamp"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["summary"]["total"], r["summary"]["passed"]);
    assert!(r.get("timestamp").is_none());
    assert_eq!(r["config"]["max_index"], 6);
    assert_eq!(r["config"]["quotients"], serde_json::json!([2, 4, 8]));
    let ids = check_ids(&r);
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(!c["anchor"].as_str().unwrap().is_empty());
        assert!(c.get("witness").is_none());
    }
    for id in [
        "det.c-d",
        "conj.x-b0",
        "nc.d-action",
        "finite.b-subgroup-n4",
        "quotient.tau-n3-m3",
    ] {
        assert!(ids.iter().any(|i| i == id), "missing {id}");
    }
}

#[test]
fn verify_text_and_timestamp() {
    let o = hnn(&["verify", "--max-index", "2", "--quotients", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS det.c-d")));
    assert!(out.trim_end().ends_with("0 failed"));
    let r = json(&hnn(&[
        "verify",
        "--max-index",
        "2",
        "--quotients",
        "2",
        "--json",
    ]));
    assert!(r["timestamp"].as_u64().unwrap() > 0);
}

#[test]
fn smaller_max_index_is_a_subset() {
    let full = json(&hnn(&["verify", "--json", "--no-timestamp"]));
    let o = hnn(&["verify", "--json", "--no-timestamp", "--max-index", "2"]);
    assert_eq!(code(&o), 0);
    let small = json(&o);
    let full_ids = check_ids(&full);
    let small_ids = check_ids(&small);
    assert!(small_ids.len() < full_ids.len());
    assert!(small_ids.iter().all(|id| full_ids.contains(id)));
    assert!(small_ids.contains(&"finite.b-subgroup-n2".to_string()));
    assert!(!small_ids.contains(&"finite.b-subgroup-n3".to_string()));
}

#[test]
fn mutated_c_fails_with_named_checks() {
    for c in [C_ROWS_SWAPPED, C_BAD_DET] {
        let o = hnn(&[
            "verify",
            "--json",
            "--no-timestamp",
            "--max-index",
            "2",
            "--c-matrix",
            c,
        ]);
        assert_eq!(code(&o), 1, "{c}");
        let r = json(&o);
        assert!(r["summary"]["failed"].as_u64().unwrap() > 0);
        let failed: Vec<&Value> = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|x| x["status"] == "fail")
            .collect();
        assert!(failed.iter().all(|x| x["witness"].is_string()));
        let first = failed[0]["id"].as_str().unwrap();
        assert!(stderr(&o).contains(first), "{}", stderr(&o));
    }
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--json",
        "--no-timestamp",
        "--max-index",
        "3",
        "--quotients",
        "2,4",
    ];
    let a = hnn(&args);
    let b = hnn(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(code(&hnn(&["verify", "--max-index", "1"])), 2);
    assert_eq!(code(&hnn(&["verify", "--quotients", "0"])), 2);
    assert_eq!(code(&hnn(&["verify", "--m-cap", "0"])), 2);
    assert_eq!(
        code(&hnn(&["verify", "--config", "/nonexistent/hnn.toml"])),
        2
    );
    assert_eq!(code(&hnn(&["verify", "--c-matrix", "1, 0"])), 2);
    assert_eq!(code(&hnn(&["frobnicate"])), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hnn.toml");
    fs::write(&path, "max_index = 3\nquotients = [2]\noutput = \"json\"\n").unwrap();
    let p = path.to_str().unwrap();

    let r = json(&hnn(&["verify", "--config", p, "--no-timestamp"]));
    assert_eq!(r["config"]["max_index"], 3);
    assert_eq!(r["config"]["quotients"], serde_json::json!([2]));

    let r = json(&hnn(&[
        "verify",
        "--config",
        p,
        "--no-timestamp",
        "--max-index",
        "2",
    ]));
    assert_eq!(r["config"]["max_index"], 2);
    assert_eq!(r["config"]["quotients"], serde_json::json!([2]));

    fs::write(&path, "max_index = 0\n").unwrap();
    assert_eq!(code(&hnn(&["verify", "--config", p])), 2);
    fs::write(&path, "bogus = true\n").unwrap();
    assert_eq!(code(&hnn(&["verify", "--config", p])), 2);
}

#[test]
fn eval_in_g_prints_matrix() {
    let o = hnn(&["eval", "d c^-1", "G"]);
    assert_eq!(code(&o), 0);
    let b0 = hnn_core::matrix_model::b_matrix(0);
    assert_eq!(stdout(&o).trim(), b0.to_string());
    let printed: hnn_core::mat3::Mat3 = stdout(&o).trim().parse().unwrap();
    assert_eq!(printed, b0);

    let o = hnn(&["eval", "d c^-1", "--json"]);
    assert_eq!(json(&o)["result"]["matrix"], b0.to_string());
    assert_eq!(code(&hnn(&["eval", "b0^4"])), 0);
    assert_eq!(
        stdout(&hnn(&["eval", "b0^4", "G"])).trim(),
        hnn_core::mat3::Mat3::identity().to_string()
    );
}

#[test]
fn eval_in_h() {
    let o = hnn(&["eval", "t d t^-1 d^-3", "H:3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "trivial");
    assert_eq!(
        stdout(&hnn(&["eval", "t d t^-1 d^-2", "H:3"])).trim(),
        "nontrivial"
    );
    let o = hnn(&["eval", "t d t^-1 d^-3", "H:3", "--json"]);
    assert_eq!(json(&o)["result"]["trivial"], true);
}

#[test]
fn eval_in_quotients() {
    let r = json(&hnn(&["eval", "d^4", "Q:4", "--json"]));
    assert_eq!(r["result"]["identity"], true);
    assert_eq!(r["result"]["d_exp"], 0);
    let o = hnn(&["eval", "d^4", "Q:4"]);
    assert_eq!(
        stdout(&o).trim(),
        hnn_core::quotients::QGroup::new(4)
            .unwrap()
            .identity()
            .to_string()
    );
    assert_eq!(
        json(&hnn(&["eval", "d", "Q:4", "--json"]))["result"]["identity"],
        false
    );

    let r = json(&hnn(&["eval", "t^4 d^4", "P:3,2", "--json"]));
    assert_eq!(r["result"]["identity"], true);
    let r = json(&hnn(&["eval", "t c t^-1 c^-3", "P:3,2", "--json"]));
    assert_eq!(r["result"]["identity"], true);
    let r = json(&hnn(&["eval", "t", "P:3,2", "--json"]));
    assert_eq!(r["result"]["t_exp"], 1);
}

#[test]
fn eval_errors_exit_2() {
    assert_eq!(code(&hnn(&["eval", "t", "G"])), 2);
    assert_eq!(code(&hnn(&["eval", "t", "Q:4"])), 2);
    assert_eq!(code(&hnn(&["eval", "d", "P:4,2"])), 2);
    assert_eq!(code(&hnn(&["eval", "d", "Q:0"])), 2);
    assert_eq!(code(&hnn(&["eval", "d", "X"])), 2);
    assert_eq!(code(&hnn(&["eval", "d^", "G"])), 2);
    assert_eq!(code(&hnn(&["eval", "d", "H:0"])), 2);
}

#[test]
fn separate_examples() {
    let o = hnn(&["separate", "d", "3"]);
    assert_eq!(code(&o), 0);
    let c = json(&o);
    assert_eq!(c["verdict"], "separated");
    assert_eq!(c["m"], 1);
    assert_eq!(c["n"], 3);
    assert_eq!(c["word"], "d");
    for key in ["eps", "z", "d_exp", "t_exp"] {
        assert!(c["image"].get(key).is_some(), "{key}");
    }

    let c = json(&hnn(&["separate", "t c t^-1 c^-3", "3"]));
    assert_eq!(c["verdict"], "trivial");
    assert!(c["m"].is_null() && c["route"].is_null() && c["image"].is_null());

    let c = json(&hnn(&["separate", "t b0 t^-1 b0^-1", "-3"]));
    assert_eq!(c["verdict"], "separated");
}

#[test]
fn separate_even_n_is_usage_error() {
    let o = hnn(&["separate", "d", "4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("odd"));
    assert!(o.stdout.is_empty());
}

#[test]
fn separate_inconclusive_exits_1() {
    let o = hnn(&["separate", "d^1024", "3", "--m-cap", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "inconclusive");
    assert_eq!(code(&hnn(&["separate", "d^1024", "3"])), 0);
}

#[test]
fn quotient_reports() {
    let o = hnn(&["quotient", "3", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let reports = r.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["group"], "P");
    assert_eq!(reports[0]["order"], 64);
    assert_eq!(reports[0]["n"], 3);
    assert_eq!(reports[0]["m"], 1);
    assert_eq!(reports[0]["N"], 2);
    assert_eq!(reports[2]["group"], "Nc");
    assert_eq!(reports[2]["order"], 16);

    let r = json(&hnn(&["quotient", "3", "2", "--json"]));
    let p = &r[0];
    assert_eq!(p["order"], 2048);
    assert!(p["derived_length"].as_u64().unwrap() <= 4);
    assert_eq!(
        p["derived_series"].as_array().unwrap().len() as u64,
        p["derived_length"].as_u64().unwrap() + 1
    );

    let o = hnn(&["quotient", "3", "1"]);
    assert!(stdout(&o).contains("order: 64"));
}

#[test]
fn quotient_cap_exceeded() {
    let o = hnn(&["quotient", "3", "2", "--enum-cap", "10"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cap exceeded"));
}

#[test]
fn quotient_bad_params_exit_2() {
    assert_eq!(code(&hnn(&["quotient", "2", "1"])), 2);
    assert_eq!(code(&hnn(&["quotient", "3", "0"])), 2);
    assert_eq!(code(&hnn(&["quotient", "3", "99"])), 2);
}
