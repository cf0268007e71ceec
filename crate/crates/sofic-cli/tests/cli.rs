use std::path::PathBuf;
use std::process::{Command, Output};

use sofic::symbolic::{SoficPresentation, SoficRelation};

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "examples", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn expected_patterns() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "sofic", "tests", "data", "golden_kernel_patterns.txt"].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sofic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_sft_golden() {
    let o = run(&["check-sft", &sample("golden.sofic")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SFT: yes; minimal forbidden: 11\n");
}

#[test]
fn check_sft_even_is_negative_verdict() {
    let o = run(&["check-sft", &sample("even.sofic"), "--list-len", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SFT: no;"));
    assert!(stdout(&o).contains("101, 10001"));
}

#[test]
fn golden_pipeline_patterns_match_checked_in_list() {
    let o = run(&["golden-pipeline", "--emit-patterns"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut got: Vec<&str> = out.lines().skip(1).collect();
    let fig = expected_patterns();
    let mut want: Vec<&str> = fig.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).collect();
    got.sort_unstable();
    want.sort_unstable();
    assert_eq!(got, want);
    assert!(out.starts_with("K: equivalence yes; 64 minimal forbidden patterns (4 of width 4, 40 of width 5, 20 of width 6)"));
}

#[test]
fn expansive_bound_exhaustion_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("circle");
    let o = run(&[
        "simplicial",
        "--facets",
        "12,13,23",
        "--suspend",
        "Z",
        "--emit",
        "sofic-pair",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let y = prefix.with_extension("sofic");
    let z = prefix.with_extension("rel");
    let o = run(&["expansive", y.to_str().unwrap(), z.to_str().unwrap(), "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    for k in 1..=3 {
        assert!(out.contains(&format!("k={k}: ")), "{out}");
    }
}

#[test]
fn expansive_verdicts() {
    let o = run(&["expansive", &sample("golden.sofic"), &sample("golden_kernel.rel")]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "expansive: yes (window 6)\n"));
    let o = run(&["expansive", &sample("full2.sofic"), &sample("binary_reals.rel")]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "expansive: yes (window 3)\n"));
}

#[test]
fn errors_exit_one_with_single_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sofic");
    std::fs::write(&bad, "side Q\nalphabet 0 1\n").unwrap();
    let o = run(&["check-sft", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: "));
    let o = run(&["check-sft", "/nonexistent/file.sofic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_are_byte_stable() {
    let args = ["--json", "equivalence", &sample("binary_reals.rel"), &sample("full2.sofic")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["operation"], "equivalence");
    assert_eq!(v["details"]["equivalence"], true);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(v.get("timing_ms").is_none());
    let t = run(&["--json", "--timing", "entropy", &sample("golden.sofic")]);
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v["timing_ms"].as_f64().is_some());
}

#[test]
fn emitted_presentations_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.rel");
    let o = run(&[
        "toral-kernel",
        "--matrix",
        "1,1,1,0",
        "--cover",
        &sample("golden.sofic"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let read = |p: &std::path::Path| SoficPresentation::parse(&std::fs::read_to_string(p).unwrap()).unwrap();
    let k = SoficRelation::from_presentation(read(&out)).unwrap();
    let checked_in = SoficRelation::from_presentation(read(std::path::Path::new(&sample("golden_kernel.rel")))).unwrap();
    assert!(k.language_equal(&checked_in));
    let o = run(&["simplicial", "--facets", "12,13,23", "--suspend", "N", "--emit", "sofic-pair"]);
    let text = stdout(&o);
    let (y, z) = text.split_once("# relation\n").unwrap();
    let y = SoficPresentation::parse(y).unwrap();
    let z = SoficRelation::from_presentation(SoficPresentation::parse(z).unwrap()).unwrap();
    assert!(sofic::symbolic::equivalence_check(&z, &y).unwrap().is_equivalence);
    let again = SoficPresentation::parse(&y.to_text()).unwrap();
    assert!(again.language_equal(&y));
}

#[test]
fn beta_classify_inputs() {
    let o = run(&["beta-classify", "--dstar", ":1"]);
    assert!(stdout(&o).starts_with("d* = :1: SFT/SFT\n"));
    let o = run(&["beta-classify", "--beta", "phi", "--prefix", "10"]);
    let out = stdout(&o);
    assert!(out.contains("d_β(1) prefix: 1100000000\n"), "{out}");
    assert!(out.contains("d* = :10: SFT/proper-sofic"), "{out}");
    let o = run(&["beta-classify", "--dstar", ":01"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mult_table_has_sixteen_entries() {
    let o = run(&["--json", "mult-table"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["details"]["entries"].as_array().unwrap().len(), 16);
    assert_eq!(v["details"]["names"], serde_json::json!(["L", "R", "RR", "LR"]));
}

#[test]
fn interval_bracket_worked_value() {
    let o = run(&["metric-bracket", "--interval", "--x", "0;0", "--y", "0;1", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["metric-bracket", "--interval", "--x", ";0", "--y", ";1", "--depth", "3"]);
    assert!(stdout(&o).contains("depth=3 m=2 r=3/4 s=1 u=1\n"), "{}", stdout(&o));
}

#[test]
fn remaining_subcommands_run() {
    let g = sample("golden.sofic");
    let k = sample("golden_kernel.rel");
    for args in [
        vec!["min-forbidden", g.as_str()],
        vec!["entropy", g.as_str()],
        vec!["dimension-bound", g.as_str(), k.as_str()],
        vec!["compose", k.as_str(), k.as_str(), "--restrict", g.as_str()],
        vec!["transitive-closure", k.as_str(), g.as_str()],
        vec!["dot-export", g.as_str()],
        vec!["simplicial", "--file", "CIRCLE"],
    ] {
        let circle = sample("circle.facets");
        let args: Vec<&str> = args.iter().map(|a| if *a == "CIRCLE" { circle.as_str() } else { a }).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
