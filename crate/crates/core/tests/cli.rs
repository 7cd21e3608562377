use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use credit_eoq::cli::Scenario;
use credit_eoq::cost::earned_correction;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_credit-eoq"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn row3() -> String {
    scenario("row3.json").display().to_string()
}

fn temp_config(name: &str, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(scenario("row3.json")).unwrap()).unwrap();
    edit(&mut doc);
    let path = std::env::temp_dir().join(format!("credit-eoq-{}-{name}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}

#[test]
fn solve_reports_fixed_sections() {
    let o = run(&["solve", "--config", &row3()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["scenario", "derived", "branches", "global", "paper_comparison", "validation"]);
    assert_eq!(doc["derived"]["configuration"], "Config1");
    assert_eq!(doc["global"]["case"], "TC3");
    let cmp = &doc["paper_comparison"];
    assert_eq!(cmp["target_t_star"].as_f64(), Some(1.000129));
    assert_eq!(cmp["target_tvc"].as_f64(), Some(4936419.16));
    assert_eq!(cmp["within_gate"], true);
}

#[test]
fn original_variant_targets_the_other_row() {
    let o = run(&["solve", "--config", &row3(), "--variant", "original"]);
    assert_eq!(o.status.code(), Some(0));
    let cmp = &json(&o)["paper_comparison"];
    assert_eq!(cmp["variant"], "original");
    assert_eq!(cmp["target_t_star"].as_f64(), Some(0.0161));
    assert_eq!(cmp["target_tvc"].as_f64(), Some(148020.0));
    assert!(cmp["tvc_rel_deviation"].as_f64().unwrap().abs() < 5e-3);
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["solve", "--config", &row3()]);
    let b = run(&["solve", "--config", &row3()]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["sweep", "--config", &row3(), "--param", "M", "--from", "0.0165", "--to", "0.033", "--steps", "4"]);
    let b = run(&["sweep", "--config", &row3(), "--param", "M", "--from", "0.0165", "--to", "0.033", "--steps", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numbers_use_twelve_significant_digits() {
    let text = stdout(&run(&["solve", "--config", &row3()]));
    assert!(text.contains("\"t_star\": 0.0164572620589"));
    assert!(text.contains("\"t_a\": 0.016099998704"));
}

#[test]
fn csv_and_json_agree() {
    let doc = json(&run(&["solve", "--config", &row3()]));
    let csv_text = stdout(&run(&["solve", "--config", &row3(), "--format", "csv"]));
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let branches = doc["branches"].as_array().unwrap();
    assert_eq!(rows.len(), branches.len());
    for (row, branch) in rows.iter().zip(branches) {
        for (name, field) in header.iter().zip(row.iter()) {
            let Some(v) = branch.get(name) else { continue };
            match v {
                Value::Number(n) => assert_eq!(field.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{name}"),
                Value::String(s) => assert_eq!(field, s),
                Value::Null => assert_eq!(field, ""),
                Value::Bool(b) => assert_eq!(field, b.to_string()),
                _ => {}
            }
        }
    }

    let sweep = |fmt: &str| {
        stdout(&run(&["sweep", "--config", &row3(), "--param", "W", "--values", "100000,144900,200000", "--format", fmt]))
    };
    let rows: Vec<Value> = serde_json::from_str(&sweep("json")).unwrap();
    let csv_text = sweep("csv");
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    for (rec, row) in rdr.records().map(Result::unwrap).zip(&rows) {
        for (i, key) in ["value", "t_a", "t_star", "q_star", "tvc"].iter().enumerate() {
            let col = [0, 2, 3, 4, 5][i];
            assert_eq!(rec[col].parse::<f64>().unwrap(), row[key].as_f64().unwrap(), "{key}");
        }
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("credit-eoq-{}-out.json", std::process::id()));
    let o = run(&["solve", "--config", &row3(), "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&run(&["solve", "--config", &row3()])));
    std::fs::remove_file(path).ok();
}

#[test]
fn bad_input_exits_two() {
    let swapped = temp_config("swapped", |d| d["customer_credit"] = 0.02.into());
    let o = run(&["solve", "--config", swapped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("M must exceed N"));

    let missing_field = temp_config("missing", |d| {
        d.as_object_mut().unwrap().remove("theta");
    });
    assert_eq!(run(&["solve", "--config", missing_field.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--config", "/nonexistent/row3.json"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--config", &row3(), "--variant", "fancy"]).status.code(), Some(2));
    for p in [swapped, missing_field] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn validate_row3_passes() {
    let o = run(&["validate", "--config", &row3(), "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = &json(&o)["validation"];
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples_per_branch"], 200);
    assert!(v["breaches"].as_array().unwrap().is_empty());
}

#[test]
fn validate_below_the_noise_floor_fails() {
    let o = run(&["validate", "--config", &row3(), "--tolerance", "1e-15"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!json(&o)["validation"]["breaches"].as_array().unwrap().is_empty());
}

#[test]
fn validate_catches_the_original_earned_term() {
    let path = scenario("high_ie.json");
    let params = Scenario::load(&path).unwrap().params;
    let o = run(&["validate", "--config", path.to_str().unwrap(), "--inject-original-earned", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut earned = 0;
    for rec in rdr.records().map(Result::unwrap) {
        assert_eq!(&rec[1], "TC3", "only the case-2 regime differs");
        if &rec[0] != "interest_earned" {
            continue;
        }
        let t: f64 = rec[2].parse().unwrap();
        assert!(params.customer_credit < t && t < params.supplier_credit);
        let diff = rec[3].parse::<f64>().unwrap() - rec[4].parse::<f64>().unwrap();
        let delta = earned_correction(&params, t);
        assert!((diff - delta).abs() <= 1e-6 * delta + 1e-8, "T = {t}: {diff} vs {delta}");
        earned += 1;
    }
    assert!(earned > 0);
}

#[test]
fn sweep_rows_follow_the_values() {
    let o = run(&["sweep", "--config", &row3(), "--param", "M", "--from", "0.0165", "--to", "0.033", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    let values: Vec<f64> = rows.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(values, [0.0165, 0.02475, 0.033]);

    let o = run(&["sweep", "--config", &row3(), "--param", "Ie", "--values", "0,0.000005"]);
    let rows: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    let tvc: Vec<f64> = rows.iter().map(|r| r["tvc"].as_f64().unwrap()).collect();
    assert!(tvc[1] <= tvc[0]);

    let o = run(&["sweep", "--config", &row3(), "--param", "W", "--values", "100000,144900,200000", "--format", "csv"]);
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>()[..3], ["value", "configuration", "t_a"]);
    let t_a: Vec<f64> = rdr.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    assert!(t_a.windows(2).all(|w| w[1] > w[0]), "{t_a:?}");
}

#[test]
fn sweep_reports_bad_rows_and_continues() {
    let o = run(&["sweep", "--config", &row3(), "--param", "N", "--values", "0.01,0.02,0.015"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["error"].is_null());
    assert!(rows[1]["error"].as_str().unwrap().contains("M must exceed N"));
    assert!(rows[2]["error"].is_null());
    assert_eq!(run(&["sweep", "--config", &row3(), "--param", "bogus", "--values", "1"]).status.code(), Some(2));
}

#[test]
fn compare_lists_both_variants() {
    let o = run(&["compare", "--config", &row3(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let variants: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(variants, ["corrected", "original"]);
}
