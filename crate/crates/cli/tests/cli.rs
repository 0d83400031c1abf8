use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(dir("golden").join(name)).unwrap()
}

fn viaphy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_viaphy"))
        .args(args)
        .env_remove("VIAPHY_LIMITS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = viaphy(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json_field(text: &str, key: &str) -> String {
    let pat = format!("\"{key}\":");
    let start = text.find(&pat).unwrap_or_else(|| panic!("{key} missing in {text}")) + pat.len();
    let rest = &text[start..];
    let end = rest.find([',', '}']).unwrap();
    rest[..end].to_string()
}

#[test]
fn solve_faller_trap_per_algorithm() {
    let ex2 = fixture("ex2.inst");
    for (alg, value) in [("faller", "2"), ("greedy_p", "10"), ("enum_p", "10"), ("exact", "10")] {
        let out = ok(&["solve", &ex2, "--algorithm", alg, "--json", "--no-timing"]);
        assert_eq!(json_field(&out, "value"), value, "{alg}");
        assert_eq!(json_field(&out, "viable"), "true", "{alg}");
    }
}

#[test]
fn solve_json_matches_golden() {
    let out = ok(&["solve", &fixture("ex2.inst"), "--algorithm", "greedy_p", "--p", "1", "--json", "--no-timing"]);
    assert_eq!(out, golden("ex2_greedy_p.json"));
}

#[test]
fn solve_threads_and_table() {
    let fig1 = fixture("fig1.inst");
    let a = ok(&["solve", &fig1, "--p", "2", "--json", "--no-timing"]);
    let b = ok(&["solve", &fig1, "--p", "2", "--threads", "4", "--json", "--no-timing"]);
    assert_eq!(a, b);
    let table = ok(&["solve", &fig1, "--algorithm", "exact"]);
    assert!(table.contains("value      9"), "{table}");
    assert!(table.contains("elapsed"), "{table}");
}

#[test]
fn verify_reports_floor_and_verdict() {
    let ex2 = fixture("ex2.inst");
    let out = ok(&["verify", &ex2, "--algorithm", "greedy_p"]);
    assert!(out.contains("floor      0.1967"), "{out}");
    assert!(out.contains("verdict    PASS"), "{out}");
    let out = ok(&["verify", &ex2, "--algorithm", "faller", "--json", "--no-timing"]);
    assert_eq!(out, golden("ex2_verify_faller.json"));
    let out = ok(&["verify", &ex2, "--algorithm", "faller"]);
    assert!(out.contains("verdict    report-only"), "{out}");
}

#[test]
fn set_queries() {
    let fig1 = fixture("fig1.inst");
    assert_eq!(ok(&["check", &fig1, "--set", "A,D,E"]), "false\n");
    assert_eq!(ok(&["check", &fig1, "--set", "A,B,D,E"]), "true\n");
    assert_eq!(ok(&["check", &fig1, "--set", ""]), "true\n");
    assert_eq!(ok(&["pd", &fig1, "--set", "A,B"]), "4\n");
    assert_eq!(ok(&["pd", &fig1, "--set", "A,B,C,D,E"]), "12\n");
    assert_eq!(ok(&["extend", &fig1, "--set", "A"]), "A,B\n");
    assert_eq!(ok(&["extend", &fig1, "--set", "D"]), "D,E\n");
    assert_eq!(ok(&["depth", &fig1]), "d=3 longest_path_len=3\n");
    assert_eq!(ok(&["depth", &fig1, "--k", "2"]), "d=2 longest_path_len=3\n");
}

#[test]
fn generate_sat_golden() {
    let out = ok(&["generate", "sat", &fixture("fig5.cnf")]);
    assert_eq!(out, golden("fig5_sat.inst"));
}

#[test]
fn generate_then_solve() {
    let tmp = std::env::temp_dir().join(format!("viaphy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let cov = tmp.join("cov.inst");
    let cov = cov.to_str().unwrap();
    ok(&["generate", "maxcov", &fixture("fig3.cov"), "--k", "2", "-o", cov]);
    let out = ok(&["solve", cov, "--algorithm", "exact", "--json", "--no-timing"]);
    // two sets of the sample cover all four unit-weight elements
    assert_eq!(json_field(&out, "value"), "4");

    let vc = tmp.join("vc.inst");
    let vc = vc.to_str().unwrap();
    ok(&["generate", "vc", &fixture("fig4.graph"), "--k", "2", "--out", vc]);
    assert_eq!(ok(&["depth", vc]), "d=4 longest_path_len=4\n");
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["generate".to_string(), "maxcov".into(), fixture("empty.cov"), "--k".into(), "1".into()],
        vec!["generate".into(), "vc".into(), fixture("fig4.graph")],
        vec!["solve".into(), "missing.inst".into()],
        vec!["solve".into(), fixture("fig1.cov.missing")],
        vec!["check".into(), fixture("fig1.inst"), "--set".into(), "Q".into()],
        vec!["solve".into(), fixture("fig1.inst"), "--p".into(), "0".into()],
        vec!["no-such-command".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = viaphy(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn resource_failures_exit_two() {
    let fig1 = fixture("fig1.inst");
    let out = viaphy(&["solve", &fig1, "--algorithm", "enum_p", "--seed-cap", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("min(3p+3d-3,k)"));

    let out = Command::new(env!("CARGO_BIN_EXE_viaphy"))
        .args(["solve", &fig1, "--algorithm", "exact"])
        .env("VIAPHY_LIMITS", "exact_max_species=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = viaphy(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("generate"));
}

#[test]
fn verify_exact_against_itself() {
    let out = ok(&["verify", &fixture("fig1.inst"), "--algorithm", "exact", "--json", "--no-timing"]);
    assert_eq!(json_field(&out, "ratio"), "1.0");
    assert_eq!(json_field(&out, "floor"), "1.0");
}

#[test]
fn generated_coverage_budget() {
    let out = ok(&["generate", "maxcov", &fixture("fig3.cov"), "--k", "2"]);
    assert!(out.contains("[budget]\n12\n"), "{out}");
}

#[test]
fn malformed_instances_report_position() {
    for name in ["cycle.inst", "bad_weight.inst"] {
        let out = viaphy(&["pd", &fixture(name), "--set", "A"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(name) && !err.contains("panicked"), "{err}");
    }
    let out = viaphy(&["pd", &fixture("bad_weight.inst")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
