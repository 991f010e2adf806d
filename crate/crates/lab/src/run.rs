//! Executes a configured experiment.

use std::path::Path;

use anyhow::{bail, Context, Result};
use summa_core::decomposition::{
    bounded_sums_from_rows, column_difference_checks, decomposition_table, DecompositionRow,
};
use summa_core::fourier::{fourier_summability_experiment, FourierExperiment, FourierState};
use summa_core::matrices::check_matrix_conditions;
use summa_core::summability::{
    check_hypotheses, check_lemma, factored_series, index_cesaro, index_matrix, index_weighted,
    CesaroOneMean, FactorScenario,
};
use summa_core::{
    GrowthReport, LazySequence, SummabilityLedger, TriangularMethod, Verdict, WeightSystem,
};

use crate::config::{CheckKind, ExperimentConfig, MethodSpec, SeriesSpec};
use crate::resolve;

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub only: Option<CheckKind>,
    pub horizon: Option<usize>,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub group: String,
    pub id: String,
    pub report: GrowthReport,
}

#[derive(Debug, Clone)]
pub struct FourierRow {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub t: f64,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    /// The config after overrides.
    pub config: ExperimentConfig,
    pub method_label: String,
    pub checks: Vec<CheckRow>,
    pub ledgers: Vec<SummabilityLedger>,
    pub decomposition: Vec<DecompositionRow>,
    pub hat_column_sums: Vec<f64>,
    pub fourier: Vec<FourierRow>,
    pub notes: Vec<(String, f64)>,
}

impl RunReport {
    pub fn overall(&self) -> Verdict {
        Verdict::combine(self.checks.iter().map(|c| c.report.verdict))
    }

    pub fn check(&self, group: &str, id: &str) -> Option<&GrowthReport> {
        self.checks
            .iter()
            .find(|c| c.group == group && c.id == id)
            .map(|c| &c.report)
    }

    fn push(&mut self, group: &str, id: impl Into<String>, report: GrowthReport) {
        self.checks.push(CheckRow {
            group: group.to_string(),
            id: id.into(),
            report,
        });
    }
}

/// Applies the overrides and validates the result.
pub fn effective_config(config: &ExperimentConfig, opts: &RunOptions) -> Result<ExperimentConfig> {
    let mut cfg = config.clone();
    if let Some(n) = opts.horizon {
        cfg.params.horizon = n;
    }
    if let Some(tol) = opts.tolerance {
        cfg.tolerances.coefficient = tol;
    }
    if let Some(only) = opts.only {
        cfg.checks = vec![only];
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs every requested check. Relative paths in the config resolve against `base`.
pub fn execute(config: &ExperimentConfig, opts: &RunOptions, base: &Path) -> Result<RunReport> {
    let cfg = effective_config(config, opts)?;
    let n = cfg.params.horizon;
    let k = cfg.params.k;
    let thr = cfg.tolerances.thresholds();

    let weights = resolve::weights("weights", &cfg.weights)?;
    let factor = resolve::sequence("factor", &cfg.factor, 0)?;
    let majorant = resolve::sequence("majorant", &cfg.majorant, 0)?;
    let method = resolve::method(&cfg.method, (&cfg.weights, &weights), base)?;
    let method = if matches!(cfg.method, MethodSpec::Dense { .. }) {
        if method.max_rows() <= n {
            bail!(
                "method.path: the matrix has {} rows, N = {n} needs {}",
                method.max_rows(),
                n + 1
            );
        }
        method
    } else {
        method.with_max_rows(n + 2)
    };

    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();

    let mut report = RunReport {
        method_label: method.label().to_string(),
        config: cfg.clone(),
        checks: Vec::new(),
        ledgers: Vec::new(),
        decomposition: Vec::new(),
        hat_column_sums: Vec::new(),
        fourier: Vec::new(),
        notes: Vec::new(),
    };

    let series = match &cfg.series {
        SeriesSpec::Expr { expr, start } => resolve::sequence("series.expr", expr, *start)?,
        SeriesSpec::MeanInverse { mean } => {
            CesaroOneMean::invert(&resolve::sequence("series.mean", mean, 0)?)
        }
        SeriesSpec::Fourier { function, x } => {
            let f = resolve::function(function, base)?;
            if checks.contains(&CheckKind::Fourier) {
                let mut spec = FourierExperiment::new(
                    f,
                    *x,
                    factor.clone(),
                    majorant.clone(),
                    weights.clone(),
                    method.clone(),
                );
                spec.k = k;
                spec.variant = cfg.variant();
                spec.horizon = n;
                spec.tolerance = cfg.tolerances.coefficient;
                let out = fourier_summability_experiment(&spec, &thr).context("fourier")?;
                for c in &out.hypotheses.checks {
                    report.push("fourier-hypothesis", c.id, c.report.clone());
                }
                report
                    .notes
                    .push(("class constant".into(), out.hypotheses.class_constant));
                report.push("fourier", "bv-phi1", out.bv_phi1.report.clone());
                report.push("fourier", "bv-phi", out.bv_phi.report.clone());
                report.push("fourier", "t-sup", out.t_sup.clone());
                report.push("fourier", "index", out.index.report(&thr));
                report.fourier = out
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| FourierRow {
                        n: i,
                        a,
                        b,
                        c: out.c.get(i).copied().unwrap_or(0.0),
                        t: out.t.get(i).copied().unwrap_or(0.0),
                    })
                    .collect();
                report.ledgers.push(out.index);
                LazySequence::from_table(0, out.c)
            } else {
                let mut state = FourierState::with_tolerance(&f, *x, cfg.tolerances.coefficient)
                    .context("fourier")?;
                state.fill(n).context("fourier")?;
                state.c_sequence()
            }
        }
    };

    for check in checks {
        match check {
            CheckKind::Hypotheses => {
                let scenario = FactorScenario {
                    series: series.clone(),
                    factor: factor.clone(),
                    majorant: majorant.clone(),
                    weights: weights.clone(),
                    k,
                };
                let h =
                    check_hypotheses(&scenario, cfg.variant(), n, &thr).context("hypotheses")?;
                for c in h.checks {
                    report.push("hypothesis", c.id, c.report);
                }
                report
                    .notes
                    .push(("class constant".into(), h.class_constant));
            }
            CheckKind::Lemma => {
                let (decay, sum) = check_lemma(&factor, &majorant, n, &thr).context("lemma")?;
                report.push("lemma", "difference-decay", decay);
                report.push("lemma", "majorant-variation-sum", sum);
            }
            CheckKind::MatrixConditions => {
                for c in check_matrix_conditions(&method, &weights, n, &thr)
                    .context("matrix conditions")?
                {
                    report.push("matrix", c.id, c.report);
                }
                let c = column_difference_checks(&method, n).context("column differences")?;
                report.push("column", "identity", c.identity);
                report.push("column", "row-bound", c.row_bound);
                report.push("column", "column-bound", c.column_bound);
                report.notes.push(("min row slack".into(), c.min_row_slack));
                report
                    .notes
                    .push(("min column slack".into(), c.min_column_slack));
                report.hat_column_sums = c.hat_column_sums;
            }
            CheckKind::Index => {
                let b = factored_series(&series, &factor);
                index_ledgers(
                    &mut report,
                    &b,
                    &method,
                    &cfg.method,
                    &weights,
                    &cfg.weights,
                    k,
                    n,
                )?;
            }
            CheckKind::Decomposition => {
                let rows =
                    decomposition_table(&method, &series, &factor, n).context("decomposition")?;
                let (worst, at) = rows
                    .iter()
                    .map(|r| (r.residual.abs() / r.delta_i.abs().max(1.0), r.n))
                    .fold((0.0f64, 1), |acc, x| if x.0 > acc.0 { x } else { acc });
                report.push(
                    "decomposition",
                    "residual",
                    GrowthReport::exact(
                        "dI_n = I1 + I2 + I3 + I4",
                        worst,
                        at,
                        summa_core::decomposition::RESIDUAL_TOLERANCE,
                    ),
                );
                let sums = bounded_sums_from_rows(&rows, &weights, k, method.label())
                    .context("decomposition")?;
                let [r1, r2, r3, r4, rt] = sums.reports(&thr);
                for (id, r) in [
                    ("I1", r1),
                    ("I2", r2),
                    ("I3", r3),
                    ("I4", r4),
                    ("total", rt),
                ] {
                    report.push("decomposition", id, r);
                }
                report.push("decomposition", "domination", sums.domination);
                let [l1, l2, l3, l4] = sums.parts;
                report.ledgers.extend([l1, l2, l3, l4, sums.total]);
                report.decomposition = rows;
            }
            CheckKind::Fourier => {}
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn index_ledgers(
    report: &mut RunReport,
    b: &LazySequence,
    method: &TriangularMethod,
    spec: &MethodSpec,
    weights: &WeightSystem,
    weights_src: &str,
    k: f64,
    n: usize,
) -> Result<()> {
    let thr = report.config.tolerances.thresholds();
    let add = |report: &mut RunReport, id: &str, l: SummabilityLedger| {
        report.push("index", id, l.report(&thr));
        report.ledgers.push(l);
    };
    add(
        report,
        "matrix",
        index_matrix(b, method, weights, k, n).context("index")?,
    );
    let unit_p = weights_src.trim() == "1";
    match spec {
        MethodSpec::WeightedMean { weights: None } => {
            add(
                report,
                "riesz",
                index_weighted(b, weights, k, n).context("index")?,
            );
            if unit_p {
                add(
                    report,
                    "cesaro-1",
                    index_cesaro(b, 1.0, k, n).context("index")?,
                );
            }
        }
        MethodSpec::Cesaro { alpha } if unit_p => {
            add(
                report,
                "cesaro",
                index_cesaro(b, *alpha, k, n).context("index")?,
            );
        }
        _ => {}
    }
    Ok(())
}
