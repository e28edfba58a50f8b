//! The command-line contract: payloads, formats and exit statuses.

mod oracles;

use std::process::{Command, Output};

fn zetadr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetadr"))
        .args(args)
        .env_remove("ZETADR_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn eval_examples() {
    let o = zetadr(&["eval", "--fn", "eta", "--s", "2"]);
    assert!(o.status.success());
    let v: f64 = field(&stdout(&o), "value").parse().unwrap();
    assert!((v - std::f64::consts::PI.powi(2) / 12.0).abs() < 1e-15);

    let o = zetadr(&["eval", "--fn", "zeta", "--s", "-1"]);
    let out = stdout(&o);
    assert_eq!(field(&out, "exact"), "-1/12");
    assert!(field(&out, "value").starts_with("-0.08333333333"));

    let o = zetadr(&["eval", "--fn", "zeta_b", "--s", "2", "--b", "1", "--normalization", "unnormalized"]);
    let v: f64 = field(&stdout(&o), "value").parse().unwrap();
    assert!((v - oracles::zeta_b_bessel(2.0, 1.0)).abs() < 1e-10);
}

#[test]
fn exit_statuses() {
    assert_eq!(zetadr(&["eval", "--fn", "hurwitz", "--s", "2", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(zetadr(&["eval", "--fn", "zeta", "--s", "1"]).status.code(), Some(2));
    assert_eq!(zetadr(&["bernoulli", "--n", "-3"]).status.code(), Some(2));
    assert_eq!(zetadr(&["--format", "yaml", "report"]).status.code(), Some(2));
    assert_eq!(zetadr(&["ftr", "--family", "gamma", "--sigma", "2", "--tau", "20"]).status.code(), Some(2));
    // a quadrature tolerance finer than the working precision is a convergence failure
    assert_eq!(zetadr(&["ftr", "--family", "rzf", "--sigma", "2", "--tol", "1e-200"]).status.code(), Some(3));
    // residuals are data: a large one still exits 0
    assert_eq!(zetadr(&["identity", "--id", "T1"]).status.code(), Some(0));
    assert_eq!(zetadr(&["identity", "--id", "T1", "--assert", "rhs", "--tol", "1e-9"]).status.code(), Some(1));
    assert_eq!(zetadr(&["identity", "--id", "T1", "--assert", "dr", "--tol", "1e-20"]).status.code(), Some(0));
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_zetadr"))
        .args(["eval", "--fn", "zeta", "--s", "2"])
        .env("ZETADR_DIGITS", "40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_zetadr"))
        .args(["eval", "--fn", "zeta", "--s", "2"])
        .env("ZETADR_DIGITS", "80")
        .output()
        .unwrap();
    assert_eq!(field(&stdout(&o), "digits"), "80");
}

#[test]
fn precision_changes_only_trailing_digits() {
    let at = |d: &str| field(&stdout(&zetadr(&["--digits", d, "eval", "--fn", "zeta", "--s", "0.5,3"])), "value");
    assert_eq!(at("64"), at("96"));
}

#[test]
fn identity_json_round_trips() {
    let o = zetadr(&["--format", "json", "identity", "--id", "T1"]);
    let text = stdout(&o);
    let rec: zetadr::identity::ReportRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", text);
    let dr: f64 = rec.dr_side.unwrap().value.parse().unwrap();
    assert!((dr - 0.581_976_71).abs() < 1e-8);
    let res: f64 = rec.residual_value_vs_rhs.unwrap().parse().unwrap();
    assert!((res - 1.0).abs() < 1e-9);
}

#[test]
fn identity_examples() {
    let json = |args: &[&str]| -> zetadr::identity::ReportRecord {
        let mut full = vec!["--format", "json", "identity"];
        full.extend_from_slice(args);
        serde_json::from_str(&stdout(&zetadr(&full))).unwrap()
    };
    let dr = |r: &zetadr::identity::ReportRecord| -> f64 { r.dr_side.as_ref().unwrap().value.parse().unwrap() };
    let t2 = json(&["--id", "T2", "--b", "1"]);
    assert!((dr(&t2) - (-1f64).exp() / (1f64.exp() - 1.0)).abs() < 1e-15);
    let t5 = json(&["--id", "T5"]);
    let t6p = json(&["--id", "T6", "--lambda-convention", "paper"]);
    assert!((dr(&t6p) - 2.0 * dr(&t5)).abs() < 1e-15);
}

#[test]
fn bernoulli_examples() {
    assert_eq!(stdout(&zetadr(&["bernoulli", "--n", "12"])), "-691/2730\n");
    assert_eq!(stdout(&zetadr(&["bernoulli", "--n", "3"])), "0\n");
    assert_eq!(stdout(&zetadr(&["bernoulli", "--n", "2", "--poly", "--q", "1/2"])), "-1/12\n");
}

#[test]
fn dr_examples() {
    let dump = stdout(&zetadr(&["dr", "--family", "gamma", "--trunc", "4", "--dump"]));
    let terms: Vec<zetadr::dr::CombTerm> = serde_json::from_str(&dump).unwrap();
    let w: Vec<f64> = terms.iter().map(|t| t.weight.parse().unwrap()).collect();
    let expect = [1.0, -1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0];
    assert_eq!(w.len(), 5);
    for (a, b) in w.iter().zip(expect) {
        assert!((a - b).abs() < 1e-15);
    }
    let rzf = field(&stdout(&zetadr(&["dr", "--family", "rzf", "--phi", "one", "--trunc", "60"])), "value");
    assert!(rzf.starts_with("0.581976706"));
    let erzf = field(&stdout(&zetadr(&["dr", "--family", "erzf", "--b", "0", "--phi", "one"])), "value");
    assert_eq!(rzf, erzf);
    assert_eq!(zetadr(&["dr", "--family", "qzf"]).status.code(), Some(2));
}

#[test]
fn ftr_examples() {
    let diff = |args: &[&str]| -> (f64, f64) {
        let mut full = vec!["ftr"];
        full.extend_from_slice(args);
        let out = stdout(&zetadr(&full));
        (field(&out, "integral").parse().unwrap(), field(&out, "difference").parse().unwrap())
    };
    let (g, d) = diff(&["--family", "gamma", "--sigma", "2", "--tau", "0"]);
    assert!((g - 1.0).abs() < 1e-15 && d < 1e-10);
    let (z, d) = diff(&["--family", "rzf", "--sigma", "2", "--tau", "0"]);
    assert!((z - 1.644934067).abs() < 1e-9 && d < 1e-10);
    let (h, _) = diff(&["--family", "hzf", "--sigma", "2", "--tau", "0", "--a", "1"]);
    assert_eq!(h, z);
}

#[test]
fn sweep_csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = zetadr(&[
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
        "sweep",
        "--id",
        "T4",
        "--q",
        "1,2",
        "--b",
        "1/2,1",
        "--trunc",
        "20",
        "--assert",
        "dr",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, zetadr::identity::CSV_COLUMNS);
    let rows: Vec<(String, String)> = rdr.records().map(|r| r.unwrap()).map(|r| (r[2].to_string(), r[1].to_string())).collect();
    assert_eq!(rows, [("1", "1/2"), ("1", "1"), ("2", "1/2"), ("2", "1")].map(|(a, b)| (a.to_string(), b.to_string())));
    // only the payload file remains in the directory
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn sweep_records_failed_points() {
    let o = zetadr(&["--format", "json", "sweep", "--id", "T3", "--q", "-1,1", "--b", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert!(arr[0]["error"].as_str().unwrap().contains("q must be positive"));
    assert!(arr[1]["dr_side"].is_object());
}
