use std::fs;
use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;
use tempfile::TempDir;

const ELLIPTIC_F3: &str = r#"{"kind": "plane", "p": 3, "poly": [[1, [0, 2, 1]], [-1, [3, 0, 0]], [-1, [1, 0, 2]]]}"#;

fn mzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzeta")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn projective_plane_form() {
    let out = mzeta(&["zeta-pn", "--n", "2", "--precision", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["denominator"], serde_json::json!([[0, 1], [1, 1], [2, 1]]));
    assert_eq!(r["result"]["numerator"], "1");
    assert_eq!(r["precision"], 8);
    assert_eq!(r["result"]["expansion"][1], "1 + L + L^2");
    assert_eq!(r["inputs"]["n"], 2);
}

#[test]
fn elliptic_verification() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "elliptic_f3.json", ELLIPTIC_F3);
    let out = mzeta(&["verify", "--model", &model, "--precision", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out)["result"].clone();
    assert_eq!(r["verdict"], "agree");
    assert_eq!(r["checked_coefficients"], 12);
    assert_eq!(r["lpoly"], serde_json::json!([1, 0, 3]));
    assert_eq!(r["assignment"]["Pic0"], 4);
    assert_eq!(r["zeta"]["numerator"], "1 + (-1 - L + Pic0)*t + L*t^2");
}

#[test]
fn reduce_reports_domain_error() {
    let out = mzeta(&["sb-reduce", "--full", "1+L^2", "--r", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["error"]["name"], "NotDivisible");
    assert_eq!(r["inputs"]["full"], "1+L^2");
    assert!(r.get("result").is_none());

    let out = mzeta(&["sb-reduce", "--full", "X*(1+L^2+L^4)", "--r", "2", "--d", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["reduced"], "X");
}

#[test]
fn severi_brauer_commands() {
    let out = mzeta(&["sb-ladder", "--p", "X", "--r", "2", "--d", "4"]);
    let r = report(&out)["result"].clone();
    assert_eq!(r["class"], "X + L^2*X");
    assert_eq!(r["ladder"], "1 + L^2");
    assert_eq!(r["fiber_dimension"], 3);

    let out = mzeta(&["sb-ladder", "--p", "X", "--r", "2", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["name"], "IndexMismatch");

    let out = mzeta(&["sb-filter", "--c1", "1", "--r1", "1", "--c3", "L", "--r3", "1"]);
    let r = report(&out)["result"].clone();
    assert_eq!(r["class"], "1 + L^2");
    assert_eq!(r["symmetric"], false);
}

#[test]
fn curve_data_commands() {
    let dir = TempDir::new().unwrap();
    let conic = write(
        &dir,
        "conic.json",
        r#"{"genus": 0, "cycle_degree": 2, "sym_classes": ["1", "X", "1+L+L^2", "X*(1+L^2)"]}"#,
    );
    let out = mzeta(&["zeta-pointless", "--data", &conic]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["result"].clone();
    assert_eq!(r["numerator"], "1 + X*t + L*t^2");
    assert_eq!(r["denominator"], serde_json::json!([[0, 2], [2, 2]]));
    assert_eq!(r["degree_bound"], 2);

    let pointed = write(&dir, "e.json", r#"{"genus": 1, "low_classes": ["1"], "pic0": "Pic0"}"#);
    let out = mzeta(&["zeta-pointed", "--data", &pointed]);
    let r = report(&out)["result"].clone();
    assert_eq!(r["numerator"], "1 + (-1 - L + Pic0)*t + L*t^2");
    assert_eq!(r["attains_bound"], true);

    let short = write(
        &dir,
        "s.json",
        r#"{"genus": 1, "cycle_degree": 2, "sym_classes": ["1", "C"]}"#,
    );
    let out = mzeta(&["zeta-pointless", "--data", &short]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["name"], "InsufficientInitialData");
}

#[test]
fn zero_dimensional_counts() {
    let out = mzeta(&["zeta-zerodim", "--degrees", "1,1", "--precision", "4"]);
    let r = report(&out)["result"].clone();
    assert_eq!(r["counts"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(r["level"], "counting");
}

#[test]
fn counts_and_weil() {
    let dir = TempDir::new().unwrap();
    let model = write(
        &dir,
        "h.json",
        r#"{"kind": "hyperelliptic", "p": 5, "f": [1, 1, 0, 0, 0, 1], "genus": 2}"#,
    );
    let out = mzeta(&["count", "--model", &model, "--len", "4"]);
    let r = report(&out)["result"].clone();
    assert_eq!(r["point_counts"], serde_json::json!([6, 46, 126, 526]));
    assert_eq!(r["divisor_counts"]["agree"], true);
    assert_eq!(r["divisor_counts"]["exp"], serde_json::json!([1, 6, 41, 216, 1116]));

    let out = mzeta(&["weil", "--model", &model]);
    assert_eq!(report(&out)["result"]["lpoly"], serde_json::json!([1, 0, 10, 0, 25]));

    let out = mzeta(&["weil", "--counts", "9", "--q", "3", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["name"], "WeilBoundViolated");

    let wrong = write(
        &dir,
        "w.json",
        r#"{"kind": "hyperelliptic", "p": 5, "f": [1, 1, 0, 0, 0, 1], "genus": 3}"#,
    );
    let out = mzeta(&["count", "--model", &wrong]);
    assert_eq!(report(&out)["error"]["name"], "GenusMismatch");

    let out = mzeta(&["count", "--model", &model, "--len", "8", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["name"], "BudgetExceeded");
}

#[test]
fn large_counts_are_exact_numbers() {
    let out = mzeta(&[
        "weil",
        "--counts",
        "4,16",
        "--q",
        "3",
        "--genus",
        "1",
        "--precision",
        "60",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    // (1 + 3t^2) / ((1 - t)(1 - 3t))
    let mut b = vec![BigInt::from(1), BigInt::from(4)];
    for n in 2..60 {
        let mut next = BigInt::from(4) * &b[n - 1] - BigInt::from(3) * &b[n - 2];
        if n == 2 {
            next += 3;
        }
        b.push(next);
    }
    assert_eq!(b[3], BigInt::from(52));
    let last = b[59].to_string();
    assert!(last.len() > 20);
    assert!(text.contains(&last));
}

#[test]
fn usage_errors() {
    let out = mzeta(&["zeta-pn"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "Usage");

    let out = mzeta(&["sb-reduce", "--full", "1 + * L", "--r", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "ParseError");

    let out = mzeta(&["verify", "--model", "/nonexistent/model.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "Io");

    let out = mzeta(&["zeta-pn", "--n", "2", "--precision", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = mzeta(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn job_files() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "job.json",
        r#"{"command": "sb-reduce", "inputs": {"full": "1+L+L^2", "r": 1, "d": 3}}"#,
    );
    let out = mzeta(&["job", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["reduced"], "1");

    let bad = write(
        &dir,
        "bad.json",
        r#"{"command": "sb-reduce", "inputs": {"full": "1", "r": 1, "d": 3, "x": 0}}"#,
    );
    let out = mzeta(&["job", "--spec", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "InvalidInput");

    let unknown = write(&dir, "unknown.json", r#"{"command": "factor", "inputs": {}}"#);
    assert_eq!(mzeta(&["job", "--spec", &unknown]).status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "e.json", ELLIPTIC_F3);
    let a = mzeta(&["verify", "--model", &model, "--jobs", "1"]);
    let b = mzeta(&["verify", "--model", &model, "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);

    let path = dir.path().join("report.json");
    let c = mzeta(&["verify", "--model", &model, "--output", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), a.stdout);
    assert!(report(&a).get("timing").is_none());

    let timed = mzeta(&["verify", "--model", &model, "--timing"]);
    assert!(report(&timed)["timing"]["elapsed_ms"].is_number());
}
