use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lifted_walk_cli::dataset::{self, Row, COLUMNS};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lifted-walk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_rows(path: &Path) -> Vec<Row> {
    dataset::read_csv(fs::File::open(path).unwrap()).unwrap()
}

fn total(rows: &[Row], f: impl Fn(&Row) -> f64) -> f64 {
    rows.iter().map(f).sum()
}

#[test]
fn verify_passes_and_reports_json() {
    let o = bin(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().filter(|l| l.ends_with("pass")).count() >= 7);

    let o = bin(&["verify", "--seed", "42", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 7);
    for c in checks {
        for key in ["name", "residual", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "{key}");
        }
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn origin_run_has_203_rows_and_unit_norm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let o = bin(&[
        "run",
        "--steps",
        "100",
        "--sites",
        "auto",
        "--initial",
        "point:0:(1,0),(0,0)",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let header = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(header, COLUMNS.join(","));
    let rows = read_rows(&path);
    assert_eq!(rows.len(), 203);
    assert_eq!((rows[0].site, rows[202].site), (-101, 101));
    assert!((total(&rows, |r| r.prob_total) - 1.0).abs() < 1e-6);
    assert!((total(&rows, |r| r.classical) - 1.0).abs() < 1e-9);
    let origin = rows.iter().find(|r| r.site == 0).unwrap();
    assert!((origin.classical - 0.07958923738717877).abs() < 1e-9);
    assert!(origin.prob_total < 0.02);
}

#[test]
fn phase_run_is_symmetric_with_populated_phases() {
    let o = bin(&[
        "run",
        "--steps",
        "50",
        "--initial",
        "point:0:(0.7071067811865476,0),(0,0.7071067811865476)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = dataset::read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 103);
    assert!((total(&rows, |r| r.prob_total) - 1.0).abs() < 1e-6);
    assert!(rows.iter().any(|r| r.phase0.abs() > 0.1));
    assert!(rows.iter().any(|r| r.phase1.abs() > 0.1));
    let at = |site: i64| rows.iter().find(|r| r.site == site).unwrap().prob_total;
    for k in 0..=51 {
        assert!((at(k) - at(-k)).abs() < 1e-12, "site {k}");
    }
}

fn finite_line_total(amplitude: &str) -> f64 {
    let initial = format!("uniform:2-24:({amplitude},0),(\u{2212}{amplitude},0)");
    let o = bin(&[
        "run",
        "--steps",
        "65",
        "--sites",
        "25",
        "--boundary",
        "reflect1",
        "--initial",
        &initial,
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = dataset::read_json(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 25);
    total(&rows, |r| r.prob_total)
}

#[test]
fn finite_line_run_preserves_the_start_norm() {
    // Amplitudes are used as written, so the norm is that of the start.
    let a: f64 = 0.1474;
    assert!((finite_line_total("0.1474") - 46.0 * a * a).abs() < 1e-12);
    let exact = 1.0 / 46f64.sqrt();
    assert!((finite_line_total(&exact.to_string()) - 1.0).abs() < 1e-12);
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |p: &Path| {
        vec![
            "run".to_string(),
            "--steps".into(),
            "40".into(),
            "--sites".into(),
            "30".into(),
            "--boundary".into(),
            "reflect2".into(),
            "--initial".into(),
            "uniform:10-12:(0.3,0.1),(-0.2,0.4)".into(),
            "--output".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let args = args(p);
        let o = bin(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn written_dataset_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rt.csv");
    let o = bin(&[
        "run",
        "--steps",
        "30",
        "--initial",
        "point:-2:(0.6,0),(0,-0.8)",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = read_rows(&path);
    let mut again = Vec::new();
    dataset::write_csv(&mut again, &rows).unwrap();
    assert_eq!(again, fs::read(&path).unwrap());
}

#[test]
fn usage_errors_exit_2_with_one_line_naming_the_field() {
    let cases: [(&[&str], &str); 6] = [
        (
            &["run", "--steps", "ten", "--initial", "point:0:(1,0),(0,0)"],
            "--steps",
        ),
        (
            &["run", "--steps", "5", "--initial", "point:0:(1,0)"],
            "--initial",
        ),
        (
            &[
                "run",
                "--steps",
                "5",
                "--initial",
                "point:0:(1,0),(0,0)",
                "--boundary",
                "wall",
            ],
            "--boundary",
        ),
        (
            &[
                "run",
                "--steps",
                "5",
                "--sites",
                "auto",
                "--boundary",
                "trap",
                "--initial",
                "point:0:(1,0),(0,0)",
            ],
            "sites",
        ),
        (
            &[
                "run",
                "--steps",
                "5",
                "--sites",
                "9",
                "--initial",
                "point:12:(1,0),(0,0)",
            ],
            "initial",
        ),
        (
            &[
                "compare",
                "--sites",
                "16",
                "--steps",
                "21",
                "--initial",
                "point:3:(1,0),(0,0)",
            ],
            "steps",
        ),
    ];
    for (args, field) in cases {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        assert!(err.contains(field), "{args:?}: {err}");
    }
    let o = bin(&["figure", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_examples() {
    for (args, ok) in [
        (
            vec![
                "--sites",
                "16",
                "--steps",
                "10",
                "--initial",
                "point:8:(0.6,0),(0,0.8)",
            ],
            true,
        ),
        (
            vec![
                "--sites",
                "25",
                "--steps",
                "12",
                "--boundary",
                "reflect1",
                "--initial",
                "uniform:2-24:(1,0),(-1,0)",
            ],
            true,
        ),
        (
            vec![
                "--sites",
                "4",
                "--steps",
                "0",
                "--initial",
                "point:2:(1,0),(0,0)",
            ],
            true,
        ),
    ] {
        let mut full = vec!["compare"];
        full.extend(args);
        let o = bin(&full);
        assert_eq!(
            o.status.code(),
            Some(if ok { 0 } else { 1 }),
            "{}",
            stderr(&o)
        );
    }
    let o = bin(&[
        "compare",
        "--sites",
        "4",
        "--steps",
        "0",
        "--initial",
        "point:2:(1,0),(0,0)",
    ]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("max deviation 0.000e0"));
}

#[test]
fn figure_datasets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for id in ["3", "4", "5", "8", "9"] {
        let o = bin(&["figure", id, "--output-dir", out]);
        assert_eq!(o.status.code(), Some(0), "figure {id}: {}", stderr(&o));
    }

    let fig4 = read_rows(&dir.path().join("figure4.csv"));
    assert_eq!(fig4.len(), 201);
    assert_eq!(fig4, read_rows(&dir.path().join("figure3.csv")));
    let center = fig4.iter().position(|r| r.site == 0).unwrap();
    let peak = fig4.iter().map(|r| r.classical).fold(0.0, f64::max);
    assert_eq!(fig4[center].classical, peak);
    assert!(fig4[center].prob_total < 0.1 * fig4.iter().map(|r| r.prob_total).fold(0.0, f64::max));

    let fig5 = read_rows(&dir.path().join("figure5.csv"));
    assert_eq!(fig5.len(), 101);

    for (file, zero_heavy) in [("figure8_n35.csv", true), ("figure8_n65.csv", false)] {
        let rows = read_rows(&dir.path().join(file));
        assert_eq!(rows.len(), 25);
        let p0 = total(&rows, |r| r.prob0);
        assert!((total(&rows, |r| r.prob_total) - 1.0).abs() < 1e-6);
        assert_eq!(p0 > 0.5, zero_heavy, "{file}");
    }

    let fig9 = read_rows(&dir.path().join("figure9.csv"));
    let mass = total(&fig9, |r| r.classical);
    assert!(mass > 0.0 && mass < 1.0, "{mass}");
}

#[test]
fn bench_reports_schema_and_agrees() {
    let o = bin(&[
        "bench",
        "--sites",
        "32,64,128",
        "--steps",
        "10,50",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6 + 4);
    for r in rows {
        for key in ["engine", "m", "n", "seconds", "steps_per_sec"] {
            assert!(r.get(key).is_some(), "{key}");
        }
        if r["engine"] == "dense" {
            assert!(r["m"].as_u64().unwrap() <= 64);
        }
    }
    let o = bin(&["bench", "--sites", "16", "--steps", "5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "engine,m,n,seconds,steps_per_sec"
    );
}
