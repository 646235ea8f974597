//! The two problem files under corpus/ are the transcriptions the whole
//! crate exists to replay. Every golden they record must match, and the
//! two verify lines must split exactly as the sources do: the textbook
//! formula passes every route, the tablet formula as written fails the
//! numeric routes and passes only the geometric one.

use std::fs;
use std::path::Path;

use tenzan_core::{
    format_quantity, parse_problem, run_problem, GoldenStatus, ProblemRun, Report,
};

fn run(name: &str) -> ProblemRun {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let text = fs::read_to_string(path).unwrap();
    run_problem(&parse_problem(&text).unwrap(), None).unwrap()
}

// the printed derivation, in order; both problems replay it verbatim
const REPLAY: [(&str, &str); 6] = [
    ("halve", "dai/2 = chu"),
    ("s2", "dai*rt(2)/2 = chu + sho"),
    ("s3", "dai/rt(2) = chu + sho"),
    ("s5", "zero{ i: dai/rt(2); ro: -dai/2; -sho }"),
    ("s6", "zero{ i: rt(5 bu)*dai; ro: -(5 bu)*dai; -sho }"),
    ("s7", "sho = rt(5 bu)*dai - (5 bu)*dai"),
];

fn assert_replay(reports: &[&Report]) {
    for (id, modern) in REPLAY {
        let r = reports.iter().find(|r| r.id == id).unwrap();
        assert_eq!(r.modern, modern, "{id}");
        assert_eq!(r.golden, GoldenStatus::Match, "{id}");
        assert_eq!(r.column_golden, GoldenStatus::Match, "{id} column");
    }
}

#[test]
fn textbook_problem_replays_clean() {
    let run = run("stsn.tenzan");
    assert_eq!(run.outcome.mismatch_count(), 0);
    let reports: Vec<&Report> = run.outcome.reports().collect();
    assert_replay(&reports);
    for r in &reports {
        assert!(r.warnings.is_empty(), "{}: {:?}", r.id, r.warnings);
    }
    assert_eq!(format_quantity(&run.answer.unwrap(), 2), "2 bu 0 rin 7 mo …");

    let v = run.verification.unwrap();
    let names: Vec<_> = v.routes.iter().map(|r| r.route).collect();
    assert_eq!(names, ["float", "exact", "geometry"]);
    assert!(v.passed());
}

#[test]
fn tablet_problem_replays_clean_but_fails_verification() {
    let run = run("kijimadaira.tenzan");
    assert_eq!(run.outcome.mismatch_count(), 0);
    let reports: Vec<&Report> = run.outcome.reports().collect();
    assert_replay(&reports);
    let tablet = reports.iter().find(|r| r.id == "tablet").unwrap();
    assert_eq!(tablet.modern, "sho = rt(5 ko)*dai - (5 ko)*dai");
    assert_eq!(tablet.golden, GoldenStatus::Match);

    // ten-fold scale: the derivation answer is 2 sun 0 bu 7 rin, truncated
    assert_eq!(format_quantity(&run.answer.unwrap(), 2), "2 sun 0 bu 7 rin …");

    let v = run.verification.unwrap();
    assert!(!v.passed());
    let by_name = |n: &str| v.routes.iter().find(|r| r.route == n).unwrap();
    assert!(!by_name("float").pass);
    assert!(by_name("float").observed.starts_with("-27.639320225"));
    assert!(!by_name("exact").pass);
    assert!(by_name("geometry").pass, "the figure itself is sound");
}
