use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pf-spectra"))
        .args(args)
        .env_remove("PF_SPECTRA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn invalid_degree_is_usage_error() {
    assert_eq!(run(&["--degree", "1", "centers", "--period", "3"]).status.code(), Some(2));
    assert_eq!(run(&["centers"]).status.code(), Some(2));
    assert_eq!(run(&["survey", "--period", "3", "--precision", "40"]).status.code(), Some(2));
}

#[test]
fn gleason_certify_passes() {
    let o = run(&["gleason", "--degree", "2", "--max-period", "6", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let pairs = v["poonen"].as_array().unwrap();
    assert_eq!(pairs.len(), 15);
    assert!(pairs.iter().all(|p| p["pass"] == true));
    assert_eq!(v["degree_table"][5]["degree"], 27);
    assert_eq!(v["h"][2]["coeffs"], serde_json::json!(["1", "1", "2", "1"]));
}

#[test]
fn centers_csv_and_json() {
    let o = run(&["centers", "--period", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("D,m,re_c,im_c,residual"));
    assert!(lines[1].starts_with("2,3,-1.7548776662466927e0,"));
    let o = run(&["centers", "--period", "3", "--degree", "3", "--json"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 8);
}

#[test]
fn survey_writes_csv_and_svg() {
    let dir = std::env::temp_dir().join(format!("pf-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("spectra.csv");
    let svg = dir.join("cloud.svg");
    let o = run(&["survey", "--period", "3", "--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    let airplane = text.lines().find(|l| l.contains("-1.7548776662466927e0")).unwrap();
    assert!(airplane.contains("-2.15079854500973"));
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("stroke-dasharray").count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn period_one_survey_is_empty() {
    let o = run(&["survey", "--period", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dim Q_f = 0"));
}

#[test]
fn survey_is_deterministic_across_thread_counts() {
    let a = run(&["survey", "--periods", "3-7", "--threads", "1"]);
    let b = run(&["survey", "--periods", "3-7", "--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_pf-spectra"))
        .args(["survey", "--periods", "3-7"])
        .env("PF_SPECTRA_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn cycles_of_power_map() {
    let o = run(&["cycles", "--c", "0", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mut mults: Vec<f64> = v["cycles"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["postcritical"] == false)
        .map(|c| c["multiplier"][0].as_f64().unwrap())
        .collect();
    mults.sort_by(f64::total_cmp);
    assert_eq!(mults.len(), 4);
    for (a, b) in mults.iter().zip([2.0, 4.0, 8.0, 8.0]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn certify_units_period_three() {
    let o = run(&["certify-units", "--degree", "3", "--period", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["certificate"]["upsilon"], serde_json::json!(["1", "4", "6", "3", "1"]));
    assert_eq!(v["crosscheck"]["pass"], true);
}

#[test]
fn certify_units_respects_ceiling() {
    let o = run(&["certify-units", "--period", "8", "--no-crosscheck"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).lines().last().unwrap()).unwrap();
    assert_eq!(err["status"], "error");
}

#[test]
fn equidist_report() {
    let o = run(&["equidist", "--anchor", "-2", "--periods", "8,10,12"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["anchor"]["preperiod"], 2);
    assert_eq!(v["anchor"]["multiplier"][0], 4.0);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["equidist", "--anchor", "i"]).status.code(), Some(2));
}

#[test]
fn matrix_agrees() {
    let o = run(&["matrix", "--degree", "3", "--period", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 24);
    let o = run(&["matrix", "--period", "3", "--index", "0"]);
    let row = &json(&o)[0];
    assert_eq!(row["explicit"].as_array().unwrap().len(), 3);
}
