use std::fs;
use std::path::Path;

use summa_core::Verdict;
use summa_lab::config::{CheckKind, MethodSpec, SeriesSpec};
use summa_lab::{execute, presets, report, RunOptions};

fn small(n: usize) -> RunOptions {
    RunOptions {
        horizon: Some(n),
        ..Default::default()
    }
}

#[test]
fn two_runs_write_identical_bytes() {
    for name in ["thm23-weighted", "fourier-sawtooth", "control-unit-factor"] {
        let cfg = presets::preset(name).unwrap();
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        for d in &dirs {
            let r = execute(&cfg, &small(400), Path::new(".")).unwrap();
            report::write(&r, d.path()).unwrap();
        }
        for f in [
            "ledger.csv",
            "hypotheses.csv",
            "decomposition.csv",
            "summary.txt",
        ] {
            let a = fs::read(dirs[0].path().join(f)).unwrap();
            let b = fs::read(dirs[1].path().join(f)).unwrap();
            assert!(a == b, "{name}/{f} differs");
        }
    }
}

#[test]
fn csv_files_carry_a_version_line() {
    let cfg = presets::preset("C1-k").unwrap();
    let r = execute(&cfg, &small(200), Path::new(".")).unwrap();
    let d = tempfile::tempdir().unwrap();
    let files = report::write(&r, d.path()).unwrap();
    for f in files
        .iter()
        .filter(|f| f.extension().is_some_and(|e| e == "csv"))
    {
        let text = fs::read_to_string(f).unwrap();
        let first = text.lines().next().unwrap();
        assert!(
            first.starts_with("# summa-lab ") && first.ends_with(" v1"),
            "{first}"
        );
    }
    let ledger = fs::read_to_string(d.path().join("ledger.csv")).unwrap();
    assert_eq!(ledger.lines().nth(1), Some("ledger,k,n,term,partial_sum"));
    let decomposition = fs::read_to_string(d.path().join("decomposition.csv")).unwrap();
    assert_eq!(decomposition.lines().count(), 2 + 200);
}

#[test]
fn unit_weight_index_writes_the_cesaro_ledger() {
    let cfg = presets::preset("C1-k").unwrap();
    let r = execute(&cfg, &small(300), Path::new(".")).unwrap();
    let tags: Vec<_> = r.ledgers.iter().map(|l| l.method_tag.as_str()).collect();
    assert!(tags.iter().any(|t| t.starts_with("|C,1|_k")), "{tags:?}");
    assert!(tags.iter().any(|t| t.starts_with("|N,p_n|_k")), "{tags:?}");
    // same Riesz means, so the |N,1|_k terms are the matrix terms
    let m = &r.ledgers[0];
    let w = &r.ledgers[1];
    for (x, y) in m.terms.iter().zip(&w.terms) {
        assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()));
    }
}

#[test]
fn only_runs_the_requested_check() {
    let cfg = presets::preset("thm23-weighted").unwrap();
    let opts = RunOptions {
        only: Some(CheckKind::Lemma),
        horizon: Some(100),
        tolerance: None,
    };
    let r = execute(&cfg, &opts, Path::new(".")).unwrap();
    assert!(r.checks.iter().all(|c| c.group == "lemma"));
    assert!(r.ledgers.is_empty() && r.decomposition.is_empty());
}

#[test]
fn control_reports_the_factor_condition() {
    let cfg = presets::preset("control-unit-factor").unwrap();
    let r = execute(&cfg, &small(2000), Path::new(".")).unwrap();
    assert_eq!(
        r.check("hypothesis", "factor-majorant-product")
            .unwrap()
            .verdict,
        Verdict::Diverging
    );
    assert!(!r.overall().is_pass());
    assert!(report::summary(&r).contains("overall: diverging"));
}

#[test]
fn dense_method_and_sample_function_load_from_files() {
    let d = tempfile::tempdir().unwrap();
    // (C,1) rows written out
    let rows: String = (0..=60)
        .map(|n| {
            let v = vec![format!("{}", 1.0 / (n as f64 + 1.0)); n + 1];
            v.join(",") + "\n"
        })
        .collect();
    fs::write(d.path().join("c1.csv"), format!("# C,1\n{rows}")).unwrap();
    let samples: String = (0..64)
        .map(|j| {
            let t = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / 64.0;
            format!("{t}, {}\n", t.abs())
        })
        .collect();
    fs::write(d.path().join("tri.csv"), samples).unwrap();

    let mut cfg = presets::preset("thm23-weighted").unwrap();
    cfg.weights = "1".into();
    cfg.method = MethodSpec::Dense {
        path: "c1.csv".into(),
    };
    let r = execute(&cfg, &small(50), d.path()).unwrap();
    assert!(r.method_label.starts_with("dense("));
    // rows for N = 60 are missing
    assert!(execute(&cfg, &small(80), d.path()).is_err());

    cfg.series = SeriesSpec::Fourier {
        function: summa_lab::config::FunctionSpec::Samples {
            path: "tri.csv".into(),
        },
        x: 0.5,
    };
    cfg.checks = vec![CheckKind::Fourier];
    let r = execute(&cfg, &small(40), d.path()).unwrap();
    assert_eq!(r.fourier.len(), 41);
    // even input: no sine terms
    assert!(r.fourier.iter().all(|f| f.b.abs() < 1e-9));
}

#[test]
fn runtime_errors_name_the_module() {
    let mut cfg = presets::preset("thm23-weighted").unwrap();
    cfg.weights = "n-3".into();
    let e = execute(&cfg, &small(50), Path::new(".")).unwrap_err();
    let msg = format!("{e:#}");
    assert!(msg.starts_with("hypotheses: weight"), "{msg}");
}
