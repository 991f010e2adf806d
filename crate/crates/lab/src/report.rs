//! CSV and text output of a run.
//!
//! Every CSV starts with a `# summa-lab <table> v1` line. Floats are written
//! in shortest round-trip `e` notation, so two runs of the same config give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::run::RunReport;

pub const FORMAT_VERSION: u32 = 1;

fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn table(
    name: &str,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<Vec<u8>> {
    let mut out = format!("# summa-lab {name} v{FORMAT_VERSION}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
    }
    Ok(out)
}

pub fn ledger_csv(r: &RunReport) -> Result<Vec<u8>> {
    let rows = r.ledgers.iter().flat_map(|l| {
        l.rows().map(move |(n, term, partial)| {
            vec![
                l.method_tag.clone(),
                num(l.k),
                n.to_string(),
                num(term),
                num(partial),
            ]
        })
    });
    table("ledger", &["ledger", "k", "n", "term", "partial_sum"], rows)
}

pub fn hypotheses_csv(r: &RunReport) -> Result<Vec<u8>> {
    let rows = r.checks.iter().map(|c| {
        vec![
            c.group.clone(),
            c.id.clone(),
            num(c.report.sup_ratio),
            c.report.argmax_index.to_string(),
            num(c.report.tail_slope),
            c.report.verdict.as_str().to_string(),
            c.report.claim.clone(),
        ]
    });
    table(
        "checks",
        &[
            "group",
            "condition_id",
            "sup_ratio",
            "argmax_index",
            "tail_slope",
            "verdict",
            "claim",
        ],
        rows,
    )
}

pub fn decomposition_csv(r: &RunReport) -> Result<Vec<u8>> {
    let rows = r.decomposition.iter().map(|d| {
        vec![
            d.n.to_string(),
            num(d.delta_i),
            num(d.i1),
            num(d.i2),
            num(d.i3),
            num(d.i4),
            num(d.residual),
        ]
    });
    table(
        "decomposition",
        &["n", "delta_i", "i1", "i2", "i3", "i4", "residual"],
        rows,
    )
}

pub fn fourier_csv(r: &RunReport) -> Result<Vec<u8>> {
    let rows = r
        .fourier
        .iter()
        .map(|f| vec![f.n.to_string(), num(f.a), num(f.b), num(f.c), num(f.t)]);
    table("fourier", &["n", "a_n", "b_n", "c_n", "t_n"], rows)
}

pub fn hat_columns_csv(r: &RunReport) -> Result<Vec<u8>> {
    let rows = r
        .hat_column_sums
        .iter()
        .enumerate()
        .map(|(v, s)| vec![v.to_string(), num(*s)]);
    table("hat-columns", &["v", "hat_column_sum"], rows)
}

pub fn summary(r: &RunReport) -> String {
    let c = &r.config;
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", c.name);
    if !c.description.is_empty() {
        let _ = writeln!(s, "scenario: {}", c.description);
    }
    let _ = writeln!(s, "method: {}", r.method_label);
    let _ = writeln!(
        s,
        "k = {}, N = {}, X-class: {}",
        c.params.k,
        c.params.horizon,
        c.variant().name()
    );
    let _ = writeln!(
        s,
        "factor: {}   majorant: {}   weights: {}",
        c.factor, c.majorant, c.weights
    );
    let _ = writeln!(s);
    let width = r
        .checks
        .iter()
        .map(|c| c.group.len() + c.id.len() + 1)
        .max()
        .unwrap_or(0);
    for row in &r.checks {
        let name = format!("{}/{}", row.group, row.id);
        let _ = writeln!(
            s,
            "{name:<width$}  {:<12} sup {:<12} slope {:<12} {}",
            row.report.verdict.as_str(),
            format!("{:.4e}", row.report.sup_ratio),
            if row.report.tail_slope.is_nan() {
                "-".to_string()
            } else {
                format!("{:+.4}", row.report.tail_slope)
            },
            row.report.claim,
        );
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s);
        for (k, v) in &r.notes {
            let _ = writeln!(s, "{k}: {v:e}");
        }
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "overall: {}", r.overall().as_str());
    s
}

/// Writes all tables and `summary.txt`; returns the written paths.
pub fn write(r: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut files = vec![
        ("ledger.csv", ledger_csv(r)?),
        ("hypotheses.csv", hypotheses_csv(r)?),
        ("decomposition.csv", decomposition_csv(r)?),
    ];
    if !r.fourier.is_empty() {
        files.push(("fourier.csv", fourier_csv(r)?));
    }
    if !r.hat_column_sums.is_empty() {
        files.push(("hat_columns.csv", hat_columns_csv(r)?));
    }
    files.push(("summary.txt", summary(r).into_bytes()));
    let mut written = Vec::new();
    for (name, bytes) in files {
        let path = dir.join(name);
        fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
