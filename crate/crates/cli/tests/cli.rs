//! End-to-end tests of the binary: values, exit codes, output formats and
//! the JSON round-trip guarantee.

use std::process::{Command, Output};

use lucas_recip_cli::output::{OutputRecord, RecordResult};

fn lucas_recip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucas-recip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn compute_certified_floor() {
    let out = lucas_recip(&["compute", "--p", "3", "--q", "-1", "--s", "3", "--n", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("value = 483"), "{text}");
    assert!(text.contains("terms_used"), "{text}");

    let out = lucas_recip(&["compute", "--p", "1", "--q", "1", "--s", "1", "--n", "4"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("value = 1"));
}

#[test]
fn compute_json_round_trips_byte_identically() {
    let out = lucas_recip(&[
        "compute", "--p", "3", "--q", "-1", "--s", "3", "--n", "2", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let line = text.trim();
    let record: OutputRecord = serde_json::from_str(line).expect("parses");
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
    match &record.result {
        RecordResult::Value(v) => assert_eq!(v, "25"),
        other => panic!("expected a value result, got {other:?}"),
    }
    let evidence = record.evidence.expect("compute carries evidence");
    assert!(evidence.enclosure_lo.fraction.contains('/'));
    assert!(evidence.enclosure_lo.decimal.starts_with("25.5"));
}

#[test]
fn compute_rejects_unsupported_params() {
    let out = lucas_recip(&["compute", "--p", "2", "--q", "0", "--s", "1", "--n", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn compute_reports_undecided_with_exit_3() {
    // eight terms cannot separate the wide first enclosure this far out
    let out = lucas_recip(&[
        "compute", "--p", "1", "--q", "1", "--s", "1", "--n", "20", "--max-terms", "8",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("undecided"));
}

#[test]
fn compute_rejects_csv() {
    let out = lucas_recip(&[
        "compute", "--p", "3", "--q", "-1", "--s", "3", "--n", "2", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn identity_closed_forms() {
    let out = lucas_recip(&["identity", "--family", "gen-cubed", "--a", "3", "--n", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("value = 483"));

    let out = lucas_recip(&["identity", "--family", "pell", "--s", "3", "--n", "2"]);
    assert!(stdout(&out).contains("value = 7"));

    let out = lucas_recip(&["identity", "--family", "fib", "--s", "2", "--n", "4"]);
    assert!(stdout(&out).contains("value = 5"));
}

#[test]
fn identity_validates_family_parameters() {
    // fib with --a is a usage error
    let out = lucas_recip(&[
        "identity", "--family", "fib", "--s", "1", "--a", "3", "--n", "2",
    ]);
    assert_eq!(exit_code(&out), 2);
    // gen-cubed requires a >= 3
    let out = lucas_recip(&["identity", "--family", "gen-cubed", "--a", "2", "--n", "4"]);
    assert_eq!(exit_code(&out), 2);
    // missing --s for pell
    let out = lucas_recip(&["identity", "--family", "pell", "--n", "2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_sweep_matches_and_exits_zero() {
    let out = lucas_recip(&[
        "verify", "--family", "gen-cubed", "--a", "3..5", "--n", "2..12", "--jobs", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("matched=33"), "{text}");
    assert!(text.contains("mismatched=0"), "{text}");

    let out = lucas_recip(&["verify", "--family", "fib", "--s", "1", "--n", "1..25"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("matched=25"));
}

#[test]
fn verify_rejects_bad_ranges() {
    let out = lucas_recip(&[
        "verify", "--family", "gen-cubed", "--a", "2..2", "--n", "2..5",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = lucas_recip(&["verify", "--family", "fib", "--s", "1", "--n", "5..2"]);
    assert_eq!(exit_code(&out), 2);
    let out = lucas_recip(&["verify", "--family", "pell", "--s", "9", "--n", "1..4"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_csv_has_header_and_rows() {
    let out = lucas_recip(&[
        "verify", "--family", "pell", "--s", "2", "--n", "1..6", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,a,s,n,closed_form,certified,status");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("pell,,2,1,"));
}

#[test]
fn verify_json_round_trips() {
    let out = lucas_recip(&[
        "verify", "--family", "fib", "--s", "2", "--n", "1..8", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let line = stdout(&out);
    let line = line.trim();
    let record: OutputRecord = serde_json::from_str(line).expect("parses");
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
    match &record.result {
        RecordResult::VerifyRows(rows) => {
            assert_eq!(rows.len(), 8);
            assert!(rows.iter().all(|r| r.status == "match"));
        }
        other => panic!("expected verify rows, got {other:?}"),
    }
    assert_eq!(record.summary.unwrap()["matched"], 8);
}

#[test]
fn proofcheck_small_grid() {
    let out = lucas_recip(&["proofcheck", "--a", "3..4", "--n", "2..6", "--jobs", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("failed=0"), "{text}");
    assert!(text.contains("probe"), "{text}");
}

#[test]
fn proofcheck_only_filter() {
    let out = lucas_recip(&[
        "proofcheck", "--a", "3..3", "--n", "5..5", "--only", "mod5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mod5_decomposition"));
    assert!(text.contains("reports=1"), "{text}");

    let out = lucas_recip(&[
        "proofcheck", "--a", "3..3", "--n", "5..5", "--only", "nosuchcheck",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn proofcheck_json_round_trips() {
    let out = lucas_recip(&[
        "proofcheck", "--a", "3..3", "--n", "2..3", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let line = stdout(&out);
    let line = line.trim();
    let record: OutputRecord = serde_json::from_str(line).expect("parses");
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
    match &record.result {
        RecordResult::CheckRows(rows) => {
            assert_eq!(rows.len(), 2 * 9);
            assert!(rows.iter().any(|r| r.status == "probe"));
            assert!(rows.iter().all(|r| r.status != "fail"));
        }
        other => panic!("expected check rows, got {other:?}"),
    }
}

#[test]
fn proofcheck_csv_is_lossless() {
    let out = lucas_recip(&[
        "proofcheck", "--a", "3..3", "--n", "5..5", "--only", "lambda", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap() == "check,a,index,status,witness");
    // the witness survives a csv round trip intact
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "lambda_bounds");
    assert_eq!(&rows[0][3], "pass");
    assert!(rows[0][4].contains("lambda1 < 1681/10000: holds"));
}

#[test]
fn proofcheck_rejects_bad_grid() {
    let out = lucas_recip(&["proofcheck", "--a", "2..4", "--n", "2..3"]);
    assert_eq!(exit_code(&out), 2);
    let out = lucas_recip(&["proofcheck", "--a", "3..4", "--n", "1..3"]);
    assert_eq!(exit_code(&out), 2);
}
