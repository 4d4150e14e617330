use std::io::Write;
use std::process::{Command, Output};

use torsion_tower_cli::{ReportBody, ReportJson, EMBEDDED_FIXTURES};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torsion-tower"));
    c.env_remove("TORSION_TOWER_FIXTURES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Parses every stdout line and checks it re-serializes to the same bytes.
fn reports(out: &Output) -> Vec<ReportJson> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines()
        .map(|line| {
            let r: ReportJson = serde_json::from_str(line).unwrap();
            assert_eq!(r.to_json(false), line);
            r
        })
        .collect()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn only(out: &Output) -> ReportBody {
    let mut r = reports(out);
    assert_eq!(r.len(), 1);
    r.remove(0).result
}

#[test]
fn torsion_of_a_curve_with_a_three_torsion_point() {
    let out = run(&["torsion", "--a", "0,0,1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let ReportBody::Torsion(t) = only(&out) else { panic!() };
    assert_eq!(t.group.to_string(), "Z/3");
    assert_eq!(t.generators.len(), 1);
}

#[test]
fn torsion_by_label() {
    let out = run(&["torsion", "--label", "14a2"]);
    let ReportBody::Torsion(t) = only(&out) else { panic!() };
    assert_eq!(t.group.to_string(), "Z/6");
}

#[test]
fn singular_curve_is_an_input_error() {
    let out = run(&["torsion", "--a", "0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("singular"));
    assert!(out.stdout.is_empty());
}

#[test]
fn negative_a_invariants_parse() {
    let out = run(&["torsion", "--a", "1,0,1,-36,-70"]);
    let ReportBody::Torsion(t) = only(&out) else { panic!() };
    assert_eq!(t.group.to_string(), "Z/6");
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(run(&["torsion", "--a", "0,0,1,0"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", "--label", "no-such-curve"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--a", "0,0,1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--a", "0,0,1,0,0", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", "--a", "0,0,1,0,0", "--label", "14a2"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--family", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--family", "triv-to-z7", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn classify_over_the_three_tower() {
    let out = run(&["classify", "--label", "27a4", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let ReportBody::Classify(r) = only(&out) else { panic!() };
    assert_eq!(r.base.to_string(), "Z/3");
    assert_eq!(r.tower.to_string(), "Z/27");
    assert_eq!(r.layer_of_growth, Some(2));
}

#[test]
fn classify_over_the_two_tower() {
    let out = run(&["classify", "--label", "704d1", "--p", "2"]);
    let ReportBody::Classify(r) = only(&out) else { panic!() };
    assert!(r.base.is_trivial());
    assert_eq!(r.tower.to_string(), "Z/3");
}

#[test]
fn classify_large_p_keeps_the_base() {
    let out = run(&["classify", "--label", "14a2", "--p", "5"]);
    let ReportBody::Classify(r) = only(&out) else { panic!() };
    assert_eq!(r.base, r.tower);
    assert_eq!(r.tower.to_string(), "Z/6");
}

#[test]
fn evidence_tags_are_kebab_case_names() {
    let out = run(&["classify", "--label", "162b1", "--p", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let ev = v["result"]["classify"]["evidence"].as_array().unwrap();
    assert!(!ev.is_empty());
    for e in ev {
        let tag = e["mechanism"].as_str().unwrap();
        assert!(tag.chars().all(|c| c.is_ascii_lowercase() || c == '-'), "{tag}");
    }
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn generate_by_count() {
    let out = run(&["generate", "--family", "triv-to-z7", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    assert_eq!(rs.len(), 3);
    for r in rs {
        let ReportBody::Generate(g) = r.result else { panic!() };
        assert!(g.matches);
        assert!(g.report.base.is_trivial());
        assert_eq!(g.report.tower.to_string(), "Z/7");
    }
}

#[test]
fn generate_at_a_prime() {
    let out = run(&["generate", "--family", "z3-to-z9", "--p", "7"]);
    let ReportBody::Generate(g) = only(&out) else { panic!() };
    assert!(g.matches);
    assert_eq!(g.report.tower.to_string(), "Z/9");
}

#[test]
fn generate_twist_by_two() {
    let out = run(&["generate", "--family", "twist2", "--n", "7", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let ReportBody::Generate(g) = only(&out) else { panic!() };
    assert!(g.report.base.is_trivial());
    assert_eq!(g.report.tower.to_string(), "Z/7");
}

#[test]
fn verify_tables_all_rows_match() {
    let out = run(&["verify-tables"]);
    assert_eq!(out.status.code(), Some(0));
    let ReportBody::VerifyTables(s) = only(&out) else { panic!() };
    assert_eq!((s.matched, s.total), (19, 19));
    assert!(stderr(&out).contains("19/19"));
}

fn fixture_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn tampered_fixture_is_a_named_mismatch() {
    let tampered = EMBEDDED_FIXTURES.replacen(r#""expected_tower_p2": "Z/3""#, r#""expected_tower_p2": "Z/9""#, 1);
    assert_ne!(tampered, EMBEDDED_FIXTURES);
    let f = fixture_file(&tampered);
    let out = run(&["verify-tables", "--fixtures", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mismatch: 704d1"), "{}", stderr(&out));
    let ReportBody::VerifyTables(s) = only(&out) else { panic!() };
    assert_eq!(s.matched, 18);
}

#[test]
fn fixture_path_from_environment() {
    let first = EMBEDDED_FIXTURES.lines().next().unwrap();
    let f = fixture_file(first);
    let out = bin().args(["verify-tables"]).env("TORSION_TOWER_FIXTURES", f.path()).output().unwrap();
    let ReportBody::VerifyTables(s) = only(&out) else { panic!() };
    assert_eq!(s.total, 1);
}

#[test]
fn missing_fixture_is_an_io_error() {
    let out = run(&["verify-tables", "--fixtures", "/nonexistent/curves.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read fixtures"));
}

#[test]
fn corrupt_fixture_names_the_line() {
    let f = fixture_file(&format!("{}\n{{broken\n", EMBEDDED_FIXTURES.lines().next().unwrap()));
    let out = run(&["verify-tables", "--fixtures", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn factor_command() {
    // 3x^4 + 48x = 3 x (x^3 + 16)
    let out = run(&["factor", "--coeffs", "0,48,0,0,3"]);
    let ReportBody::Factor(f) = only(&out) else { panic!() };
    assert_eq!(f.content, "3");
    let degs: Vec<usize> = f.factors.iter().map(|e| e.factor.deg()).collect();
    assert_eq!(degs, [1, 3]);
}

#[test]
fn pretty_output_parses_to_the_same_report() {
    let compact = run(&["classify", "--label", "324a2", "--p", "3"]);
    let pretty = run(&["classify", "--label", "324a2", "--p", "3", "--json-pretty"]);
    let a: ReportJson = serde_json::from_slice(&compact.stdout).unwrap();
    let b: ReportJson = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8(pretty.stdout).unwrap().lines().count() > 1);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["classify", "--label", "162b1", "--p", "3"]);
    let b = run(&["classify", "--label", "162b1", "--p", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
