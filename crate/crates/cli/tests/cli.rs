use clap::Parser;
use opuc_cli::{execute, Cli, Format, Report};
use std::process::{Command, Output};

const SEQ: &str = r#"{"kind":"explicit","values":[[0.3,-0.4],[0.1,0.2]]}"#;
const HALF: &str = r#"{"kind":"explicit","values":[[0.5,0]]}"#;
const ZERO: &str = r#"{"kind":"explicit","values":[]}"#;

fn opuc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opuc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn in_process(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("opuc").chain(args.iter().copied())).unwrap();
    execute(&cli).unwrap()
}

#[test]
fn single_coefficient_z1_passes() {
    let o = opuc(&["sumrule", "--rule", "Z1", "--seq", HALF]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let Report::Sumrule(run) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("wrong report")
    };
    assert_eq!(run.entries.len(), 1);
    let r = &run.entries[0].report;
    assert!(r.residual < 1e-8);
    assert!((r.lhs - (0.75f64.ln() - 0.5)).abs() < 1e-12);
}

#[test]
fn zero_sequence_log_moments_vanish() {
    let o = opuc(&["logmoments", "--order", "4", "--seq", ZERO]);
    assert_eq!(o.status.code(), Some(0));
    let Report::Logmoments(r) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("wrong report")
    };
    assert_eq!(r.rows.len(), 5);
    for row in &r.rows {
        for v in [row.closed.unwrap(), row.general.unwrap(), row.quadrature] {
            assert_eq!(v.norm(), 0.0, "m={}", row.m);
        }
    }
}

#[test]
fn conjecture_reports_without_failing() {
    let o = opuc(&["conjecture", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let Report::Conjecture(r) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("wrong report")
    };
    assert_eq!(r.n, 5);
    assert_eq!(r.rows.len(), 5);
    // A residual far beyond any tolerance still exits 0.
    let o = opuc(&["conjecture", "--n", "8", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_report_round_trips_and_is_deterministic() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["coeffs", "--seq", SEQ],
        vec!["moments", "--seq", SEQ],
        vec!["logmoments", "--order", "6", "--seq", SEQ],
        vec!["sumrule", "--rule", "all", "--form", "reference", "--seq", SEQ],
        vec!["general-sumrule", "--n", "3", "--seq", SEQ],
        vec!["identities", "--order", "2", "--seq", SEQ],
        vec!["conjecture", "--n", "4"],
        vec!["diagnostics", "--seq", SEQ],
    ];
    for args in cases {
        let a = opuc(&args);
        let b = opuc(&args);
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?} not deterministic");
        let text = stdout(&a);
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, in_process(&args), "{args:?}");
        assert_eq!(parsed.render(Format::Json).unwrap(), text, "{args:?}");
    }
}

#[test]
fn residual_above_tolerance_exits_two() {
    let o = opuc(&["sumrule", "--rule", "Z43", "--seq", SEQ]);
    assert_eq!(o.status.code(), Some(2));
    let Report::Sumrule(run) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("wrong report")
    };
    assert!(run.entries[0].quarantine.is_some());
    let o = opuc(&["sumrule", "--rule", "Z43", "--form", "corrected", "--seq", SEQ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["sumrule", "--rule", "Z9", "--seq", SEQ],
        vec![
            "sumrule",
            "--rule",
            "Z1",
            "--seq",
            r#"{"kind":"explicit","values":[[0.5,0]"#,
        ],
        vec![
            "sumrule",
            "--rule",
            "Z1",
            "--seq",
            r#"{"kind":"explicit","values":[[1.5,0]]}"#,
        ],
        vec!["sumrule", "--rule", "Z1"],
        vec!["sumrule", "--rule", "Z1", "--seq", SEQ, "--grid", "300"],
        vec!["sumrule", "--rule", "Z1", "--seq", SEQ, "--tol", "-1"],
        vec!["sumrule", "--rule", "Z1", "--seq", SEQ, "--seq-file", "x.json"],
        vec!["frobnicate"],
    ] {
        let o = opuc(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    let o = opuc(&[
        "sumrule",
        "--rule",
        "Z1",
        "--seq",
        r#"{"kind":"explicit","values":[[0.5,0]"#,
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1 column"));
}

#[test]
fn csv_and_file_output() {
    let dir = std::env::temp_dir().join(format!("opuc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("seq.json");
    std::fs::write(&spec, SEQ).unwrap();
    let out = dir.join("moments.csv");
    let o = opuc(&[
        "moments",
        "--seq-file",
        spec.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,c_re,c_im,oracle_re,oracle_im,residual"));
    assert_eq!(lines.count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_output_is_aligned() {
    let o = opuc(&["diagnostics", "--seq", HALF, "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("operator") && header.contains("p10"));
    let row = text.lines().find(|l| l.starts_with("(S-1) ")).unwrap();
    assert!(row.split_whitespace().nth(1) == Some("0.5"));
}
