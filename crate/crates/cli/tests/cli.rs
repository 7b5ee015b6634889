use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn plog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plog")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn regenerate(args: &[&str], name: &str) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join(name);
    let mut all = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    let o = plog(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&out), read(&golden(name)), "{name} drifted");
}

#[test]
fn goldens_are_reproduced_byte_for_byte() {
    regenerate(&["reduce", "--n", "3", "--mode", "exact"], "reduce_n3_exact.json");
    regenerate(&["reduce", "--n", "4", "--points", "a,b,c,d,e,f", "--mode", "quotient"], "reduce_n4_quotient.json");
    regenerate(
        &["relations", "shuffle", "--symbol", "H(a | b // x | c)", "--with", "H(a | d, e // x | c)"],
        "shuffle.json",
    );
    regenerate(&["relations", "marker-swap", "--symbol", "H(a | b, c, d // x | e)", "--i", "2"], "marker_swap.json");
}

#[test]
fn reduce_reports_variable_bound() {
    let o = plog(&["reduce", "--n", "4", "--points", "a,b,c,d,e,f", "--mode", "quotient"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("max variable_count 2"));
}

#[test]
fn verify_golden_and_corrupted() {
    for name in ["reduce_n3_exact.json", "marker_swap.json", "shuffle.json"] {
        let o = plog(&["verify", golden(name).to_str().unwrap(), "--trials", "5"]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["kind"], "verify-report");
        assert_eq!(report["pass"], true);
    }
    // flip the coefficient of the input symbol
    let text = read(&golden("marker_swap.json"));
    let bad = text.replacen("\"coeff\": \"1\"", "\"coeff\": \"2\"", 1);
    assert_ne!(bad, text);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, bad).unwrap();
    assert_eq!(code(&plog(&["verify", p.to_str().unwrap(), "--trials", "3"])), 1);
}

#[test]
fn verify_is_deterministic() {
    let f = golden("reduce_n3_exact.json");
    let a = plog(&["verify", f.to_str().unwrap(), "--trials", "4", "--seed", "11"]);
    let b = plog(&["verify", f.to_str().unwrap(), "--trials", "4", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn phi_report() {
    let a = plog(&["phi", "--compare-paper", "--seed", "3"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let r: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["kind"], "phi-report");
    assert_eq!(r["reference_term_count"], 42);
    assert!(r["comparison"].as_array().is_some_and(|c| !c.is_empty()));
    let b = plog(&["phi", "--compare-paper", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c: serde_json::Value = serde_json::from_slice(&plog(&["phi"]).stdout).unwrap();
    assert!(c["comparison"].is_null());
}

#[test]
fn eval_values() {
    let o = plog(&["eval", "--expr", "H(0|1,0|1/2)"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-0.5822405265 + 0.0000000000i");
    let o = plog(&["eval", "--expr", "H(0|2|1)", "--digits", "6"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-0.693147 + 0.000000i");
    // log((1 - z)/(-z)) at z = 2 + i
    let o = plog(&["eval", "--expr", "H(0|z|1)", "--at", "z=2+i"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-0.4581453659 + 0.3217505544i");
}

#[test]
fn exit_code_matrix() {
    let n4q = golden("reduce_n4_quotient.json");
    let cases: &[(&[&str], i32)] = &[
        (&["reduce", "--n", "3"], 0),
        (&["reduce", "--n", "2"], 2),
        (&["reduce", "--n", "3", "--points", "a,b,c"], 2),
        (&["reduce", "--n", "3", "--points", "a,b,b,c,d"], 2),
        (&["reduce", "--n", "3", "--mode", "fuzzy"], 2),
        (&["verify", n4q.to_str().unwrap()], 2),
        (&["verify", "/nonexistent.json"], 2),
        (&["eval", "--expr", "H(0|1,0|"], 2),
        (&["eval", "--expr", "H(0|z|1)"], 2),
        (&["eval", "--expr", "H(0|0|1)"], 1),
        (&["eval", "--expr", "H(0|1/2|1)"], 1),
        (&["relations", "marker-swap", "--symbol", "H(a | b // x | c)"], 2),
        (&["relations", "antipode", "--symbol", "H(a | b, c // x | d)"], 0),
        (&["bogus"], 2),
    ];
    for (args, want) in cases {
        let o = plog(args);
        assert_eq!(code(&o), *want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
