//! Turns config specs into `summa-core` objects.

use std::path::Path;

use anyhow::{bail, Context, Result};
use summa_core::fourier::PeriodicFunction;
use summa_core::sequences::{expr, make_weights};
use summa_core::{LazySequence, TriangularMethod, WeightSystem};

use crate::config::{FunctionSpec, MethodSpec};

/// Sequence from an expression in `n`, starting at `start`.
pub fn sequence(field: &str, src: &str, start: usize) -> Result<LazySequence> {
    let e = expr::parse(src).with_context(|| format!("{field}: `{src}`"))?;
    Ok(LazySequence::from_expr(start, e))
}

pub fn weights(field: &str, src: &str) -> Result<WeightSystem> {
    if src.trim() == "1" {
        return Ok(WeightSystem::unit());
    }
    Ok(make_weights(sequence(field, src, 0)?)?)
}

/// `base` resolves relative paths.
pub fn method(
    spec: &MethodSpec,
    default_weights: (&str, &WeightSystem),
    base: &Path,
) -> Result<TriangularMethod> {
    Ok(match spec {
        MethodSpec::WeightedMean { weights: None } => {
            TriangularMethod::weighted_mean(default_weights.1)
                .with_label(format!("N(p_n = {})", default_weights.0))
        }
        MethodSpec::WeightedMean { weights: Some(src) } => {
            let w = weights("method.weights", src)?;
            TriangularMethod::weighted_mean(&w).with_label(format!("N(q_n = {src})"))
        }
        MethodSpec::Cesaro { alpha } => TriangularMethod::cesaro(*alpha).context("method.alpha")?,
        MethodSpec::Identity => TriangularMethod::identity(),
        MethodSpec::Dense { path } => {
            let path = base.join(path);
            let rows = read_rows(&path)?;
            TriangularMethod::from_rows(rows)
                .with_context(|| format!("method.path: {}", path.display()))?
                .with_label(format!("dense({})", path.display()))
        }
    })
}

/// Ragged comma-separated rows; blank lines and `#` lines are skipped.
pub fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.with_context(|| format!("{}: record {}", path.display(), i + 1))?;
        let row = rec
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("{}: record {}", path.display(), i + 1))?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn function(spec: &FunctionSpec, base: &Path) -> Result<PeriodicFunction> {
    Ok(match spec {
        FunctionSpec::Sawtooth => PeriodicFunction::sawtooth(),
        FunctionSpec::Square => PeriodicFunction::square(),
        FunctionSpec::Triangle => PeriodicFunction::triangle(),
        FunctionSpec::Sine { m } => PeriodicFunction::sine(*m),
        FunctionSpec::Cosine { m } => PeriodicFunction::cosine(*m),
        FunctionSpec::Samples { path } => {
            let path = base.join(path);
            let rows = read_rows(&path)?;
            if rows.is_empty() {
                bail!("series.function.path: {} holds no samples", path.display());
            }
            let label = path.display().to_string();
            if rows.iter().all(|r| r.len() == 2) {
                PeriodicFunction::sampled_pairs(
                    label,
                    rows.into_iter().map(|r| (r[0], r[1])).collect(),
                )?
            } else if rows.iter().all(|r| r.len() == 1) {
                PeriodicFunction::sampled(label, rows.into_iter().flatten().collect())?
            } else {
                bail!(
                    "series.function.path: {} must hold `t, f(t)` pairs or one value per line",
                    path.display()
                );
            }
        }
    })
}
