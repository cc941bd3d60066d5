use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobcoh")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("valid json")).collect()
}

fn omegas(v: &Value) -> Vec<Vec<i64>> {
    v["result"]["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["omega"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect())
        .collect()
}

#[test]
fn g2_h2_at_three() {
    let o = run(&["coho", "u", "--type", "G2", "--p", "3", "--deg", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let docs = json_lines(&o);
    assert_eq!(docs.len(), 1);
    assert_eq!(docs[0]["schema"], 1);
    assert_eq!(docs[0]["system"]["type"], "G2");
    assert_eq!(docs[0]["degree"], 2);
    // the two length-2 weights and the four extra classes
    assert_eq!(omegas(&docs[0]).len(), 6);
    let text = String::from_utf8(run(&["coho", "u", "--type", "G2", "--p", "3", "--deg", "2"]).stdout).unwrap();
    for e in ["3a1+a2", "3a1+3a2", "6a1+3a2", "4a1+2a2"] {
        assert!(text.contains(&format!("= {e} ")), "{e} missing from\n{text}");
    }
}

#[test]
fn a1_degree_three_is_empty() {
    let o = run(&["coho", "u", "--type", "A1", "--p", "5", "--deg", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(omegas(&json_lines(&o)[0]).is_empty());
}

#[test]
fn kostant_verdicts() {
    let ok = run(&["coho", "u", "--type", "B4", "--p", "7", "--deg", "3", "--check", "kostant"]);
    assert_eq!(code(&ok), 0);
    let bad = run(&["coho", "u", "--type", "A4", "--p", "3", "--deg", "3", "--check", "kostant", "--format", "json"]);
    assert_eq!(code(&bad), 1);
    let doc = &json_lines(&bad)[0];
    assert_eq!(doc["result"]["check"]["verdict"], "mismatch");
    assert!(!doc["result"]["check"]["excess"].as_array().unwrap().is_empty());
}

#[test]
fn b_dimension_from_expression() {
    let o = run(&["coho", "b", "--type", "B3", "--p", "7", "--lambda", "-7b-a", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = &json_lines(&o)[0];
    assert_eq!(doc["result"]["dim"], 1);
    assert_eq!(doc["result"]["label"], "B case 4");
}

#[test]
fn br_class_json_shape() {
    let o = run(&["coho", "br", "--type", "A2", "--p", "5", "--r", "2", "--lambda", "-a1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0]["result"];
    assert_eq!(r["tag"], "UStarTensor");
    assert_eq!(r["nu"], serde_json::json!([0, 0]));
    assert_eq!(r["twist"], 2);
    assert_eq!(r["label"], "Br case 1");
    let z = run(&["coho", "br", "--type", "A2", "--p", "5", "--r", "2", "--lambda", "1,0", "--format", "json"]);
    assert_eq!(json_lines(&z)[0]["result"]["tag"], "Zero");
    let two = run(&["coho", "br", "--type", "A2", "--p", "5", "--r", "3", "--lambda", "-p^2*a2 - p*a1", "--format", "json"]);
    let r = &json_lines(&two)[0]["result"];
    assert_eq!((r["tag"].as_str(), r["mult"].as_i64()), (Some("Line"), Some(2)));
}

#[test]
fn gamma_table_reports_mismatches() {
    let o = run(&["gamma", "--type", "F4", "--p", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text.lines().find(|l| l.contains(",s3 s2 s3,")).expect("s3 s2 s3 row");
    // table value omega_2 + omega_3 - omega_4 next to the computed 2 omega_3 - omega_4
    assert!(row.contains("\"(0,0,2,-1)\",\"(0,1,1,-1)\""), "{row}");
    assert_eq!(code(&run(&["gamma", "--type", "F4", "--p", "3"])), 1);
    assert_eq!(code(&run(&["gamma", "--type", "A3", "--p", "5"])), 0);
}

#[test]
fn crosscheck_a2() {
    let o = run(&["crosscheck", "--type", "A2", "--p", "5", "--r", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(code(&run(&["crosscheck", "--type", "B2", "--p", "5", "--bridge"])), 0);
}

#[test]
fn rootsum_catalogs() {
    let o = run(&["rootsum", "--type", "A4", "--p", "5", "--form", "simple", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = &json_lines(&o)[0];
    assert_eq!(doc["result"]["catalog"], "match");
    assert_eq!(doc["result"]["solutions"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        vec!["coho", "u", "--type", "Q2", "--p", "5"],
        vec!["coho", "u", "--type", "A2", "--p", "4"],
        vec!["coho", "br", "--type", "A2", "--p", "5", "--lambda", "a1 +"],
        vec!["coho", "b1", "--type", "A2", "--p", "3"],
        vec!["coho", "br", "--type", "A2", "--p", "5"],
        vec!["coho", "frob"],
        vec!["coho", "u", "--type", "B3", "--rank", "4", "--p", "7"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn force_reports_every_case() {
    // A4 at p = 5 is gated; with --force both B1 cases show up at once
    let o = run(&["coho", "b1", "--type", "A4", "--p", "5", "--lambda", "0,0,1,3", "--force", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let cases = json_lines(&o)[0]["result"]["cases"].as_array().unwrap().clone();
    assert_eq!(cases.len(), 2);
}

#[test]
fn deterministic_output() {
    let args = ["coho", "u", "--type", "B3", "--p", "7", "--deg", "0..3", "--format", "json"];
    let a = run(&args).stdout;
    let b = run(&["--threads", "3", "--sequential"].iter().chain(args.iter()).copied().collect::<Vec<_>>()).stdout;
    assert_eq!(a, b);
    let docs: Vec<Value> = String::from_utf8(a).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    for d in docs {
        let w = omegas(&d);
        let mut s = w.clone();
        s.sort();
        assert_eq!(w, s);
    }
}

#[test]
fn rank_flag_and_c2_numbering() {
    let o = run(&["coho", "u", "--type", "C", "--rank", "2", "--p", "5", "--deg", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let d = &json_lines(&o)[0];
    assert_eq!(d["system"]["type"], "C2");
    // simple roots in C2 numbering: a1 = (2,-1), a2 = (-2,2)
    assert_eq!(omegas(d), vec![vec![-2, 2], vec![2, -1]]);
}

#[test]
fn filtration_for_a_regular_twist() {
    let o = run(&["coho", "gr", "--type", "A2", "--p", "5", "--r", "2", "--lambda", "25*rho - a1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0]["result"];
    assert_eq!(r["factors"].as_array().unwrap().len(), 3);
    assert_eq!(r["total_dim"], "47");
}
