use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn theorem2_code_at_165() {
    let o = run(&["construct", "--method", "theorem2", "--L", "11", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["P"], 165);
    assert_eq!(v["J"], 6);
    assert_eq!(v["girth"], 8);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["tag"], "vs_even");
    assert_eq!(v["provenance"]["case"], "iv");
}

#[test]
fn construct_checks_dimensions_and_inputs() {
    assert_eq!(run(&["construct", "--method", "es", "--J", "4", "--L", "5"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--method", "dds", "--d1", "0,1", "--P", "9"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--method", "gcd", "--L", "4"]).status.code(), Some(2));
    // ES terms at a size too small for girth 8
    let o = run(&["construct", "--method", "es", "--L", "9", "--P", "41", "--verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert_ne!(json(&o)["girth"], 8);
}

#[test]
fn construct_csv_is_the_rows() {
    let o = run(&["--format", "csv", "construct", "--method", "theorem1", "--betas", "0,1,3", "--P", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,0,0\n0,1,3\n0,-1,-3\n");
}

#[test]
fn girth_reads_documents_and_arrays() {
    let dir = tempfile::tempdir().unwrap();
    let built = run(&["construct", "--method", "maxfn", "--L", "6"]);
    let doc = write(dir.path(), "m.json", &stdout(&built));
    let o = run(&["girth", "--in", &doc]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["girth"], 8);
    assert_eq!(v["witness"]["length"], 8);

    let rows = write(dir.path(), "rows.json", "[[0,0],[0,1]]");
    assert_eq!(run(&["girth", "--in", &rows]).status.code(), Some(2));
    let o = run(&["girth", "--in", &rows, "--P", "3", "--oracle", "bfs", "--cap", "10"]);
    assert_eq!(json(&o)["girth"], ">10");
    let o = run(&["--format", "csv", "girth", "--in", &rows, "--P", "3", "--cap", "12"]);
    assert_eq!(stdout(&o), "P,girth,cap,agreement\n3,12,12,true\n");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"J\": 2, \"rows\": ");
    let o = run(&["girth", "--in", &bad, "--P", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["girth", "--in", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--J", "4"]).status.code(), Some(2));
}

#[test]
fn masked_girth_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "{\"J\":2,\"L\":3,\"P\":5,\"rows\":[[0,0,0],[0,1,2]]}");
    let mask = write(dir.path(), "mask.json", "[[1,1,0],[1,1,1]]");
    let full = json(&run(&["girth", "--in", &m]));
    let masked = json(&run(&["girth", "--in", &m, "--mask", &mask]));
    // with column 2 reduced to one block, only the 2 x 2 part can close
    // cycles, and its 4-cycle residue 1 needs 5 turns to vanish mod 5
    assert_eq!(full["girth"], 8);
    assert_eq!(masked["girth"], ">12");

    let o = run(&["export", "--in", &m, "--mask", &mask]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("15 10"));
    assert_eq!(lines.next(), Some("2 3"));
    assert_eq!(text.lines().count(), 4 + 15 + 10);
    assert_eq!(run(&["--format", "json", "export", "--in", &m]).status.code(), Some(2));
}

#[test]
fn search_json_and_csv() {
    let o = run(&["search", "--J", "4", "--L", "8", "--pmax", "53"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["P"].as_i64().unwrap() <= 53);
    assert_eq!(v["alphas"][0], 1);
    assert_eq!(v["oracle_rejections"], 0);

    let o = run(&["search", "--J", "4", "--L", "8", "--pmax", "10"]);
    let v = json(&o);
    assert!(v["P"].is_null());
    assert_eq!(v["exhausted_up_to"], 10);

    let o = run(&["--format", "csv", "search", "--J", "5", "--L", "6", "--pmin", "49", "--pmax", "49", "--exhaustive"]);
    let text = stdout(&o);
    assert!(text.starts_with("P,alpha_0,alpha_1,beta\n"));
    assert!(text.lines().skip(1).any(|l| l == "49,1,6,19"), "{text}");
}

#[test]
fn tables_csv() {
    let o = run(&["tables", "--J", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("L,P_paper,P_ours,status,P_HS,P_IRS"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 19);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("pass")));
    assert_eq!(run(&["tables", "--J", "3"]).status.code(), Some(2));
}

#[test]
fn seq_csv() {
    let o = run(&["seq", "--N", "5"]);
    assert_eq!(stdout(&o), "n,s_el,s_td,P\n0,0,0,\n1,1,1,3\n2,3,-2,7\n3,4,3,9\n4,9,-6,17\n");
}

#[test]
fn simulate_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "{\"J\":3,\"L\":5,\"P\":19,\"rows\":[[0,0,0,0,0],[0,1,3,4,9],[0,-1,-3,-4,-9]]}");
    let out = dir.path().join("stats.csv");
    let args = |jobs: &str| {
        vec![
            "--jobs".to_string(),
            jobs.into(),
            "--out".into(),
            out.to_str().unwrap().into(),
            "simulate".into(),
            "--in".into(),
            m.clone(),
            "--snr".into(),
            "1.0,3.0".into(),
            "--frames".into(),
            "300".into(),
            "--iters".into(),
            "30".into(),
            "--seed".into(),
            "5".into(),
        ]
    };
    let first = {
        let a = args("1");
        let o = run(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        std::fs::read_to_string(&out).unwrap()
    };
    let a = args("3");
    run(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let second = std::fs::read_to_string(&out).unwrap();
    assert_eq!(first, second);
    let mut lines = first.lines();
    assert_eq!(lines.next(), Some("snr_db,frames,bit_err,blk_err,ber,bler,avg_iters"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], "300");
}

#[test]
fn verify_conjectures_small() {
    let o = run(&["verify-conjectures", "--which", "1", "--Lmax", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"], 38);
    assert_eq!(v["passed"], true);
    let o = run(&["verify-conjectures", "--which", "2", "--Lmax", "10", "--seq", "td"]);
    assert_eq!(json(&o)["sequence"], "td");
    assert_eq!(run(&["verify-conjectures", "--which", "3", "--Lmax", "10"]).status.code(), Some(2));
}
