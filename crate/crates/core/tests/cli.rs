use std::path::PathBuf;
use std::process::Command;

use rinehart::cli::{run_args, EXIT_INPUT, EXIT_OK};
use rinehart::presets;
use rinehart::report::{Verdict, VerdictReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rinehart"))
}

fn structured(args: &[&str]) -> VerdictReport {
    let mut full = vec!["rinehart", "--format", "structured"];
    full.extend_from_slice(args);
    let out = run_args(full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn text(args: &[&str]) -> String {
    let mut full = vec!["rinehart"];
    full.extend_from_slice(args);
    let out = run_args(full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    out.stdout
}

/// `(check, verdict)` pairs read back from the `== check: verdict` lines.
fn text_verdicts(t: &str) -> Vec<(String, Verdict)> {
    t.lines()
        .filter_map(|l| l.trim_start().strip_prefix("== "))
        .map(|l| {
            let l = l.split(" (degree ").next().unwrap();
            let (check, verdict) = l.rsplit_once(": ").unwrap();
            let v = serde_json::from_str(&format!("\"{verdict}\"")).unwrap();
            (check.to_string(), v)
        })
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rinehart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn theorem1_runs_every_step() {
    let rep = structured(&["theorem1", "--field", "Q", "--degree", "8"]);
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.degree_used, Some(8));
    assert_eq!(rep.narrative.len(), 5);
    let certs: Vec<_> = rep
        .sections
        .iter()
        .flat_map(|s| s.certificates.iter().chain(s.sections.iter().flat_map(|t| t.certificates.iter())))
        .collect();
    assert_eq!(certs.len(), 9);
    assert!(certs.iter().all(|c| c.verified));
}

#[test]
fn envelope_lists_six_basis_words() {
    let path = temp_file("square-zero.lrh", presets::SQUARE_ZERO);
    let rep = structured(&["envelope", path.to_str().unwrap(), "--degree", "3", "--basis"]);
    let basis: Vec<&str> = rep
        .narrative
        .iter()
        .filter(|s| s.title == "basis element")
        .map(|s| s.detail.as_str())
        .collect();
    assert_eq!(basis.len(), 6);
    assert_eq!(&basis[..3], ["1", "x", "y"]);
}

#[test]
fn divide_is_infeasible_with_certificate() {
    let rep = structured(&["divide", "square-zero", "--left", "x", "--target", "y", "--degree", "5"]);
    assert_eq!(rep.verdict, Verdict::Infeasible);
    assert_eq!(rep.degree_used, Some(5));
    assert!(rep.certificates[0].verified);
}

#[test]
fn text_and_structured_carry_the_same_verdicts() {
    let commands: [&[&str]; 6] = [
        &["theorem1", "--degree", "4"],
        &["theorem1", "--field", "GF(3)", "--degree", "3", "--control"],
        &["check", "square-zero"],
        &["envelope", "euler-dual", "--degree", "3"],
        &["partial", "square-zero"],
        &["partial", "euler-dual", "--degree", "3"],
    ];
    for args in commands {
        let s = structured(args);
        let t = text(args);
        assert_eq!(text_verdicts(&t), s.verdicts(), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    // an infeasible verdict is a completed run
    let out = bin().args(["partial", "square-zero"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("infeasible"));

    let out = bin().args(["check", "/nonexistent/file.toml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));

    let bad = presets::SQUARE_ZERO.replace("y = \"0\"", "w = \"0\"");
    let path = temp_file("unknown.toml", &bad);
    let out = bin().args(["check", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"w\""));

    let gf2 = presets::SQUARE_ZERO
        .replace("kind = \"rationals\"", "kind = \"prime\"\np = 2")
        .replace("x = \"y\"", "x = \"1/2*y\"");
    let path = temp_file("gf2.toml", &gf2);
    let out = bin().args(["check", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GF(2)"));

    let out = bin().args(["divide", "square-zero", "--left", "x", "--target", "q"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = bin().args(["divide", "square-zero", "--left", "x", "--target", "y", "--degree", "70"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}

#[test]
fn invalid_data_is_a_failing_report() {
    // D(x) = 1 gives D(x²) = 2x ≠ 0
    let bad = presets::SQUARE_ZERO.replace("x = \"y\"", "x = \"1\"");
    let path = temp_file("nonlr.toml", &bad);
    let p = path.to_str().unwrap();
    let rep = structured(&["check", p]);
    assert_eq!(rep.verdict, Verdict::Fail);
    let rep = structured(&["envelope", p]);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(!rep.witnesses.is_empty() || rep.sections.iter().any(|s| !s.witnesses.is_empty()));
}

#[test]
fn preset_output_round_trips() {
    let out = bin().args(["preset", "square-zero"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let printed = String::from_utf8(out.stdout).unwrap();
    let path = temp_file("printed.toml", &printed);
    let a = structured(&["theorem1", "--degree", "2"]);
    let b = structured(&["check", path.to_str().unwrap()]);
    assert_eq!(a.sections[1].verdict, Verdict::Pass);
    assert_eq!(b.verdict, Verdict::Pass);
}

#[test]
fn output_is_deterministic() {
    let a = bin().args(["--format", "structured", "theorem1", "--degree", "3"]).output().unwrap();
    let b = bin().args(["--format", "structured", "theorem1", "--degree", "3"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
