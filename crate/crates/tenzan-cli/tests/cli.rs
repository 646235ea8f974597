//! Exit-code contract and output shape of the binary: 0 clean, 1 when a
//! golden or verification check fails, 2 for malformed input or flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenzan")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("tenzan-cli-test-{name}"));
    fs::write(&path, content).unwrap();
    path
}

#[test]
fn parse_prints_canonical_lines() {
    let path = temp("parse.txt", "dai/2 = chu as 中徑\nrt(5 bu)*dai\n||kou\n");
    let out = run(&["parse", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "dai/2 = chu\nrt(5 bu)*dai\n2*kou\n");
}

#[test]
fn parse_reports_position_and_exits_two() {
    let path = temp("bad.txt", "dai +* 2\n");
    let out = run(&["parse", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn render_column_emits_the_golden_grid() {
    let path = temp("render.txt", "dai*rt(2)/2 = chu + sho as 中小径和\n");
    let out = run(&["render", path.to_str().unwrap(), "--layout", "column"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "中　二\n小　｜\n径　大\n和　二\n　　商\n");
}

#[test]
fn derive_textbook_problem_exits_clean() {
    let out = run(&["derive", corpus("stsn.tenzan").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for golden in [
        "dai/2 = chu",
        "dai*rt(2)/2 = chu + sho",
        "dai/rt(2) = chu + sho",
        "zero{ i: dai/rt(2); ro: -dai/2; -sho }",
        "zero{ i: rt(5 bu)*dai; ro: -(5 bu)*dai; -sho }",
        "sho = rt(5 bu)*dai - (5 bu)*dai",
    ] {
        assert!(text.contains(golden), "missing {golden:?}");
    }
    assert!(text.contains("answer: 2 bu 0 rin 7 mo … (stated 2 bu 07 mo)"));
    assert!(text.contains("verdict: pass"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn derive_output_is_deterministic() {
    let path = corpus("stsn.tenzan");
    let first = run(&["derive", path.to_str().unwrap()]);
    let second = run(&["derive", path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn derive_tablet_problem_exits_one_for_verification() {
    let out = run(&["derive", corpus("kijimadaira.tenzan").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    // the replay itself is clean; only the tablet formula fails its check
    assert!(!text.contains("MISMATCH"));
    assert!(text.contains("answer: 2 sun 0 bu 7 rin … (stated 2 sun 0 7 bu)"));
    assert!(text.contains("-27.639320225002102 FAIL"));
    assert!(text.contains("verdict: FAIL"));
}

#[test]
fn verify_prints_all_three_observed_values() {
    let out = run(&["verify", corpus("kijimadaira.tenzan").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("float     -27.639320225002102 FAIL"));
    assert!(text.contains("exact     -27.639320225002103"));
    assert!(text.contains("geometry  2.071067811865248 pass"));
}

#[test]
fn verify_tolerance_flag_overrides_the_file() {
    let kiji = corpus("kijimadaira.tenzan");
    let loose = run(&["verify", kiji.to_str().unwrap(), "--tol", "1000000"]);
    assert_eq!(code(&loose), 0, "{}", stdout(&loose));
    let stsn = corpus("stsn.tenzan");
    let tight = run(&["verify", stsn.to_str().unwrap(), "--tol", "0.0000001"]);
    assert_eq!(code(&tight), 1);
}

#[test]
fn verify_needs_a_verify_line() {
    let path = temp(
        "noverify.tenzan",
        "problem: static\nsource: test\nunknown: chu\n\
         given halve: dai/2 = chu\nanswer: 5 bu\n",
    );
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no verify line"));
}

#[test]
fn derive_handles_a_problem_with_no_steps() {
    let path = temp(
        "nosteps.tenzan",
        "problem: static\nsource: test\nunknown: chu\n\
         given halve: dai/2 = chu\nanswer: 5 bu\n",
    );
    let out = run(&["derive", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("answer: stated 5 bu"));
}

#[test]
fn derive_golden_mismatch_exits_one() {
    let path = temp(
        "mismatch.tenzan",
        "problem: tiny\nsource: test\nunknown: chu\n\
         given halve: dai/2 = chu\n\
         step s1 = move_left(halve)\n\
         expect s1: zero{ i: dai/2; -dai }\n\
         answer: 5 bu\n",
    );
    let out = run(&["derive", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("[MISMATCH]"));
    assert!(text.contains("expected: zero{ i: dai/2; -dai }"));
    assert!(text.contains("zero{ i: dai/2; -chu }"));
}

#[test]
fn soroban_enumerates_readings() {
    let out = run(&["soroban", "5", "--offsets", "-2..2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0.05 0.5 5 50 500\n");
}

#[test]
fn soroban_resolves_the_tablet_ambiguity() {
    let out = run(&[
        "soroban", "5", "--offsets", "-2..2",
        "--template", "(rt(x) - x)*dai",
        "--bind", "dai = 10 sun",
        "--target", "2 sun 0 7 bu",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0.5\n");
}

#[test]
fn soroban_accepts_glyph_bindings() {
    let out = run(&[
        "soroban", "5", "--offsets", "-2..2",
        "--template", "(rt(x) - x)*大",
        "--bind", "大 = 1 shaku",
        "--target", "2 sun 0 7 bu",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0.5\n");
}

#[test]
fn soroban_rejects_bad_flags() {
    assert_eq!(code(&run(&["soroban", "5", "--offsets", "3..1"])), 2);
    assert_eq!(code(&run(&["soroban", "five", "--offsets", "0..1"])), 2);
    assert_eq!(code(&run(&["soroban", "5", "--offsets", "0..1", "--template", "rt(x)"])), 2);
}
