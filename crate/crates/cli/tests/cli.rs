use std::io::Write;

use ga_cox::report::{Report, Status};
use ga_cox::{run, Outcome, EXIT_CONFIG, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use proptest::prelude::*;
use tempfile::NamedTempFile;

fn config(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn ga(args: &[&str]) -> Outcome {
    run(std::iter::once("ga-cox").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = ga(&full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

const M5: &str = r#"{"kind": "m0n", "n": 5}"#;
const M6: &str = r#"{"kind": "m0n", "n": 6}"#;
const FOUR_POINTS: &str = r#"{"kind": "linear", "r": 2, "subspaces": [
  {"points": [[1, 0, 0]]},
  {"points": [[0, 1, 0]]},
  {"points": [[0, 0, 1]]},
  {"points": [[1, 1, 1]]}
]}"#;

#[test]
fn small_n_exits_with_config_error() {
    let f = config("{\n  \"kind\": \"m0n\",\n  \"n\": 4\n}");
    let out = ga(&["model", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert!(out.stderr.contains("n >= 5"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn dependent_points_report_their_line() {
    let f = config("{\"kind\": \"linear\", \"r\": 2, \"subspaces\": [\n  {\"points\": [[1,0,0]]},\n  {\"points\": [[0,1,0], [0,3,0]]}\n]}");
    let out = ga(&["model", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn malformed_and_missing_files() {
    let f = config("{\"kind\": \"m0n\", \"n\": }");
    assert_eq!(ga(&["model", f.path().to_str().unwrap()]).code, EXIT_CONFIG);
    assert_eq!(ga(&["model", "/nonexistent/ga-cox.json"]).code, EXIT_CONFIG);
}

#[test]
fn usage_errors() {
    let f = config(M5);
    let p = f.path().to_str().unwrap();
    assert_eq!(ga(&["frobnicate", p]).code, EXIT_USAGE);
    assert_eq!(ga(&["dim", p]).code, EXIT_USAGE);
    assert_eq!(ga(&["dim", p, "--class", "2Q"]).code, EXIT_USAGE);
    assert_eq!(ga(&["generators", p, "--max-weight", "0"]).code, EXIT_USAGE);
    assert_eq!(ga(&["model", p, "--field", "F_9"]).code, EXIT_USAGE);
    assert_eq!(ga(&["model", p, "--threads", "0"]).code, EXIT_USAGE);
    let help = ga(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("generators"));
}

#[test]
fn resource_caps_exit_three() {
    let f = config(M6);
    let p = f.path().to_str().unwrap();
    let out = ga(&["generators", p, "--max-weight", "10", "--max-classes", "3"]);
    assert_eq!(out.code, EXIT_RESOURCE, "{}", out.stderr);
    assert!(out.stderr.contains("--max-classes"));
    let out = ga(&["dim", p, "--class", "4H", "--max-piece", "10"]);
    assert_eq!(out.code, EXIT_RESOURCE, "{}", out.stderr);
}

#[test]
fn effective_boundary_class() {
    let f = config(M6);
    match json(&["effective", f.path().to_str().unwrap(), "--class", "E{1,2}"]) {
        Report::Effective(r) => {
            assert!(r.effective);
            assert_eq!(r.invariant_dim, 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn dim_with_basis() {
    let f = config(M5);
    match json(&["dim", f.path().to_str().unwrap(), "--class", "H", "--basis"]) {
        Report::Dim(r) => {
            assert_eq!((r.piece_dim, r.invariant_dim), (4, 3));
            assert_eq!(r.basis.unwrap().len(), 3);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn n5_generators_and_relations() {
    let f = config(M5);
    let p = f.path().to_str().unwrap();
    let Report::Generators(g) = json(&["generators", p, "--max-weight", "3"]) else {
        panic!()
    };
    assert_eq!(g.count, 10);
    assert_eq!(g.generators[0].polynomial.text, "x{1}");
    assert_eq!(g.generators[4].polynomial.text, "y1*x{2} - y2*x{1}");
    let Report::Relations(r) = json(&["relations", p, "--max-weight", "6"]) else {
        panic!()
    };
    assert_eq!(r.count, 5);
    assert!(r.relations.iter().all(|rel| rel.terms.len() == 3));
}

#[test]
fn fixed_components_and_boundary() {
    let f = config(M5);
    let p = f.path().to_str().unwrap();
    let Report::FixedComponents(c) = json(&["fixed-components", p]) else {
        panic!()
    };
    assert_eq!(c.count, 1);
    let Report::Boundary(b) = json(&["boundary", p]) else {
        panic!()
    };
    assert_eq!(b.count, 10);
    let f = config(FOUR_POINTS);
    let out = ga(&["boundary", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn verify_passes() {
    for text in [M5, FOUR_POINTS] {
        let f = config(text);
        let Report::Verify(v) = json(&["verify", f.path().to_str().unwrap()]) else {
            panic!()
        };
        assert!(v.passed);
        assert!(v.checks.iter().all(|c| c.status != Status::Fail), "{v:?}");
    }
}

#[test]
fn every_report_round_trips() {
    let f = config(M5);
    let p = f.path().to_str().unwrap();
    let commands: [&[&str]; 8] = [
        &["model", p],
        &["dim", p, "--class", "2H - E{1} - E{2}", "--basis"],
        &["effective", p, "--class", "H - E{1} - E{2} - E{3}"],
        &["generators", p, "--max-weight", "3"],
        &["relations", p, "--max-weight", "6"],
        &["boundary", p],
        &["fixed-components", p],
        &["verify", p],
    ];
    for args in commands {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let text = ga(&full).stdout;
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(report.to_json(), text);
    }
}

#[test]
fn output_is_independent_of_threads() {
    let f = config(M6);
    let p = f.path().to_str().unwrap();
    for args in [
        vec!["generators", p, "--max-weight", "8"],
        vec!["relations", p],
        vec!["verify", p, "--max-weight", "6"],
    ] {
        let base = ga(&args);
        assert_eq!(base.code, EXIT_OK, "{}", base.stderr);
        for threads in ["1", "2", "4"] {
            let mut a = args.clone();
            a.extend(["--threads", threads]);
            assert_eq!(ga(&a), base);
        }
        assert_eq!(ga(&args), base);
    }
}

#[test]
fn field_override_keeps_dimensions() {
    let f = config(M6);
    let p = f.path().to_str().unwrap();
    let dims = |field: &str| match json(&[
        "dim",
        p,
        "--class",
        "2H - E{1,2} - E{3,4}",
        "--field",
        field,
    ]) {
        Report::Dim(r) => (r.piece_dim, r.invariant_dim),
        other => panic!("{other:?}"),
    };
    assert_eq!(dims("101"), dims("Q"));
    assert_eq!(dims("F_32003"), dims("Q"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dim_reports_round_trip(h in 0i64..3, es in proptest::collection::vec(-1i64..2, 4)) {
        let f = config(M5);
        let mut class = format!("{h}H");
        for (e, c) in es.iter().enumerate() {
            class += &format!(" {} {}E{{{}}}", if *c < 0 { '-' } else { '+' }, c.abs(), e + 1);
        }
        let out = ga(&["dim", f.path().to_str().unwrap(), "--class", &class, "--basis", "--format", "json"]);
        prop_assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let report: Report = serde_json::from_str(&out.stdout).unwrap();
        prop_assert_eq!(report.to_json(), out.stdout);
        let Report::Dim(r) = report else { panic!() };
        prop_assert!(r.invariant_dim <= r.piece_dim);
        prop_assert_eq!(r.effective, r.invariant_dim > 0);
    }
}
