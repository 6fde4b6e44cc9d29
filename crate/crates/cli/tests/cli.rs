//! End-to-end runs of the `abelian3` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelian3"))
        .args(args)
        .env_remove("ABELIAN3_ELEMENT_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "2", "2", "2"]), "16\n");
    assert_eq!(stdout(&["count", "1", "1", "12"]), "6\n");
    assert_eq!(stdout(&["count", "2", "2", "2", "--order", "2"]), "7\n");
    assert_eq!(stdout(&["count", "3", "3", "1", "--cyclic"]), "5\n");
    assert_eq!(
        stdout(&["--format", "csv", "count", "2", "2", "2", "--order", "4"]),
        "m,n,r,kind,order,count\n2,2,2,order,4,7\n"
    );
}

#[test]
fn enumerate_record_counts() {
    assert_eq!(stdout(&["enumerate", "1", "1", "1"]).lines().count(), 1);
    assert_eq!(stdout(&["enumerate", "2", "2", "2"]).lines().count(), 16);
    assert_eq!(stdout(&["enumerate", "4", "2", "1"]).lines().count(), 8);
    let csv = stdout(&["enumerate", "2", "2", "2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 17);
}

#[test]
fn enumerate_elements_json() {
    let text = stdout(&["enumerate", "2", "2", "2", "--elements", "--format", "json"]);
    let mut total = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let order = v["order"].as_u64().unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len() as u64, order);
        total += 1;
    }
    assert_eq!(total, 16);
}

#[test]
fn element_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_abelian3"))
        .args(["enumerate", "4", "4", "4", "--elements"])
        .env("ABELIAN3_ELEMENT_BOUND", "32")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("64"));
    let out = Command::new(env!("CARGO_BIN_EXE_abelian3"))
        .args(["enumerate", "2", "2", "2"])
        .env("ABELIAN3_ELEMENT_BOUND", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables_match_fixtures() {
    assert_eq!(stdout(&["--format", "csv", "table", "1"]), fixture("table1.csv"));
    assert_eq!(stdout(&["--format", "csv", "table", "2"]), fixture("table2.csv"));
    assert_eq!(stdout(&["--format", "csv", "table", "3"]), fixture("table3.csv"));
}

#[test]
fn table_text_layout() {
    let t1 = stdout(&["table", "1"]);
    assert_eq!(t1.lines().count(), 50);
    assert_eq!(t1.lines().last(), Some("50 & 41712"));
    let t2 = stdout(&["table", "2", "--limit", "3"]);
    assert_eq!(t2.lines().nth(2), Some("3 & 10+8 p+14 p^2+10 p^3+12 p^4+6 p^5+4 p^6"));
    let t3 = stdout(&["table", "3", "--limit", "2"]);
    let shapes: Vec<_> = t3.lines().map(|l| l.split(" & ").next().unwrap()).collect();
    assert_eq!(shapes, ["(1,1,1)", "(1,1,2)", "(1,2,2)", "(2,2,2)"]);
}

#[test]
fn polynomials() {
    assert_eq!(
        stdout(&["poly", "symbolic", "1", "1", "1", "--at", "2"]),
        "s(p^1,p^1,p^1) = 4+2 p+2 p^2; at p = 2: 16\n"
    );
    let json = stdout(&["--format", "json", "poly", "gaussian", "3", "1"]);
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 1, 1]));
    assert_eq!(stdout(&["poly", "h", "1"]), "h(p^1) = 4+2 p\n");
    assert_eq!(stdout(&["poly", "general", "1"]), "closed form s(p^1) = 4+2 p+2 p^2\n");
    assert_eq!(
        stdout(&["poly", "symbolic", "1", "1", "1", "--order", "1", "--at", "2"])
            .trim_end()
            .rsplit(' ')
            .next(),
        Some("7")
    );
    assert_eq!(
        stdout(&["type-count", "--lambda", "1,1,1", "--mu", "1", "--at", "2"]).trim_end().rsplit(' ').next(),
        Some("7")
    );
}

#[test]
fn verify_passes_and_reports_shape_count() {
    let text = stdout(&["verify", "--max-order", "8"]);
    assert_eq!(text, "PASS: 38 group shapes with mnr <= 8 checked, 161 subgroups\n");
    assert_eq!(stdout(&["--quiet", "verify", "--max-order", "8"]), "");
    let csv = stdout(&["--format", "csv", "verify", "--max-order", "8"]);
    assert_eq!(csv.lines().count(), 39);
}

#[test]
fn verify_names_injected_fault() {
    let out = run(&["verify", "--max-order", "16", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL (2,4,2)"), "{text}");
}

#[test]
fn asymptotic_rows() {
    let csv = stdout(&["--format", "csv", "asymptotic", "--x-values", "50,1000,10000,100000"]);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    // x = 50 sums the first table
    let table: u64 = fixture("table1.csv")
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(rows[0][1].parse::<u64>().unwrap(), table);
    let errors: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");

    let text = stdout(&["asymptotic", "--x-values", "1000", "--prime-limit", "100000"]);
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("# H(3) = 4.0978283") && header.contains("H'(3) = -5.4396"), "{header}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "2", "2", "2", "--order", "3"][..],
        &["count", "0", "2", "2"],
        &["count", "2", "2"],
        &["table", "4"],
        &["bogus"],
        &["type-count", "--lambda", "1", "--mu", "2"],
        &["asymptotic", "--x-values", "1"],
        &["--format", "xml", "count", "1", "1", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_lines_round_trip_and_determinism() {
    for args in [
        &["--format", "json", "enumerate", "4", "2", "2"][..],
        &["--format", "json", "table", "2"],
        &["--format", "json", "asymptotic", "--x-values", "100,1000"],
        &["--format", "json", "count", "6", "6", "6"],
    ] {
        let first = stdout(args);
        assert_eq!(first, stdout(args), "{args:?} is not deterministic");
        for line in first.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            assert_eq!(v, again);
        }
    }
}
