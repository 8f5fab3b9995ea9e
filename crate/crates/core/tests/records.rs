use std::io::Write;
use std::path::PathBuf;

use sextics::hunt::{read_records_from, verify_records, Mismatch};

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/known_records.csv")
}

fn tampered(edit: impl Fn(&str) -> String) -> tempfile::NamedTempFile {
    let text = std::fs::read_to_string(fixture()).unwrap();
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(edit(&text).as_bytes()).unwrap();
    f
}

#[test]
fn known_records_verify() {
    let report = verify_records(&fixture()).unwrap();
    assert_eq!(report.checks.len(), 47);
    assert!(report.malformed.is_empty());
    for c in &report.checks {
        assert!(c.passed(), "line {}: {:?}", c.line, c.mismatches);
    }
}

#[test]
fn perturbed_count_fails_alone() {
    let f = tampered(|t| t.replace("W,97,1,48,5,97,10,246,", "W,97,1,48,5,97,10,247,"));
    let report = verify_records(f.path()).unwrap();
    let failed: Vec<_> = report.failures().collect();
    assert_eq!(failed.len(), 1);
    assert_eq!((failed[0].p, failed[0].a, failed[0].b), (97, 48, 5));
    assert!(failed[0].mismatches.iter().any(|m| matches!(
        m,
        Mismatch::Count {
            recorded: Some(247),
            computed: Some(246)
        }
    )));
}

#[test]
fn foreign_witness_is_invalid() {
    // swap lambda and mu of the published 1327 witness
    let f = tampered(|t| t.replace(",611,656,696,", ",656,611,696,"));
    let report = verify_records(f.path()).unwrap();
    let failed: Vec<_> = report.failures().collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].p, 1327);
    let codes: Vec<_> = failed[0].mismatches.iter().map(Mismatch::code).collect();
    assert_eq!(codes, vec!["witness_invalid"]);
}

#[test]
fn malformed_rows_are_itemized() {
    let f = tampered(|t| {
        let mut lines: Vec<String> = t.lines().map(String::from).collect();
        lines[3] = "S,71,2,13".into();
        lines[10] = lines[10].replacen("S,", "X,", 1);
        lines.join("\n") + "\n"
    });
    let parsed = read_records_from(f.path()).unwrap();
    let lines: Vec<u64> = parsed.malformed.iter().map(|m| m.line).collect();
    assert_eq!(lines, vec![4, 11]);
    let report = verify_records(f.path()).unwrap();
    assert!(!report.all_passed());
    assert_eq!(report.failures().count(), 0);
    assert_eq!(report.checks.len(), 45);
}
