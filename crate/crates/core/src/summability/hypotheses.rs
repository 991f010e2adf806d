use alloc::vec::Vec;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use super::CesaroOneMean;
use crate::error::{check_k, Error, Result};
use crate::growth::{Check, GrowthReport, Thresholds, Verdict};
use crate::numeric::{abs_pow, CompensatedSum};
use crate::sequences::{
    almost_increasing_diagnostic, quasi_f_power_check, LazySequence, WeightSystem,
};

/// Lower constant below which an almost-increasing witness is rejected.
pub const ALMOST_INCREASING_FLOOR: f64 = 1e-6;

/// Which class the majorant `X` is assumed to belong to; this selects the
/// pair of `t`-sum conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    AlmostIncreasing,
    QuasiSigma { sigma: f64 },
    QuasiF { sigma: f64, beta: f64 },
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::AlmostIncreasing => "almost-increasing",
            Variant::QuasiSigma { .. } => "quasi-sigma",
            Variant::QuasiF { .. } => "quasi-f",
        }
    }
}

/// The series, factor, majorant and weights of a factor theorem.
#[derive(Debug, Clone)]
pub struct FactorScenario {
    pub series: LazySequence,
    pub factor: LazySequence,
    pub majorant: LazySequence,
    pub weights: WeightSystem,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisLedger {
    pub variant: Variant,
    pub checks: Vec<Check>,
    /// `K_min` for the quasi variants, the lower constant `M` otherwise.
    pub class_constant: f64,
    pub overall: Verdict,
}

impl HypothesisLedger {
    pub fn get(&self, id: &str) -> Option<&GrowthReport> {
        self.checks.iter().find(|c| c.id == id).map(|c| &c.report)
    }

    pub fn passed(&self) -> bool {
        self.overall.is_pass()
    }
}

fn majorant(x: &LazySequence, n: usize) -> Result<f64> {
    let v = x.value(n);
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain {
            quantity: "X",
            index: n,
            value: v,
        })
    }
}

fn running<F>(horizon: usize, mut term: F) -> Result<Vec<f64>>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        acc.add(term(n)?);
        out.push(acc.value());
    }
    Ok(out)
}

/// `n X_n |Δλ_n|` and the partial sums of `X_n |Δλ_n|`, `n = 1..=N`.
pub fn check_lemma(
    lambda: &LazySequence,
    x: &LazySequence,
    horizon: usize,
    thresholds: &Thresholds,
) -> Result<(GrowthReport, GrowthReport)> {
    let mut decay = Vec::with_capacity(horizon);
    let mut acc = CompensatedSum::new();
    let mut sums = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let d = (lambda.term(n) - lambda.term(n + 1)).abs();
        let xn = majorant(x, n)?;
        decay.push(n as f64 * xn * d);
        acc.add(xn * d);
        sums.push(acc.value());
    }
    Ok((
        GrowthReport::from_history("n X_n |dlambda_n| = O(1)", 1, &decay, thresholds),
        GrowthReport::from_history("sum X_n |dlambda_n| < inf", 1, &sums, thresholds),
    ))
}

/// Grades the factor hypotheses on `1 <= m <= N`.
///
/// Always: `λ_m X_m = O(1)`, `Σ n X_n |Δ²λ_n| = O(1)`, `Σ P_n/n = O(P_m)`,
/// the two consequences `n X_n|Δλ_n| = O(1)` and `Σ X_n|Δλ_n| < ∞`, and the
/// class check on `X`. Then `Σ (p_n/P_n)|t_n|^k = O(X_m)` and
/// `Σ |t_n|^k/n = O(X_m)` for the almost-increasing variant, or the same sums
/// divided termwise by `X_n^{k−1}` for the quasi variants. `O(X_m)` and
/// `O(P_m)` claims are graded through the ratio to the bound.
pub fn check_hypotheses(
    scenario: &FactorScenario,
    variant: Variant,
    horizon: usize,
    thresholds: &Thresholds,
) -> Result<HypothesisLedger> {
    check_k(scenario.k)?;
    if horizon < 3 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: horizon as f64,
            requirement: "N >= 3",
        });
    }
    let k = scenario.k;
    let lam = &scenario.factor;
    let x = &scenario.majorant;
    let wp = scenario.weights.prefix(horizon)?;
    let t = CesaroOneMean::of(&scenario.series);
    let xs: Vec<f64> = (1..=horizon)
        .map(|n| majorant(x, n))
        .collect::<Result<_>>()?;
    let xv = |n: usize| xs[n - 1];
    let mut checks = Vec::new();

    let product: Vec<f64> = (1..=horizon).map(|m| lam.term(m) * xv(m)).collect();
    checks.push(Check::new(
        "factor-majorant-product",
        GrowthReport::from_history("lambda_m X_m = O(1)", 1, &product, thresholds),
    ));

    let second = running(horizon, |n| {
        let d2 = (lam.term(n) - lam.term(n + 1)) - (lam.term(n + 1) - lam.term(n + 2));
        Ok(n as f64 * xv(n) * d2.abs())
    })?;
    checks.push(Check::new(
        "second-difference-sum",
        GrowthReport::from_history("sum n X_n |d2lambda_n| = O(1)", 1, &second, thresholds),
    ));

    let weight_sum = running(horizon, |n| Ok(wp.P(n as i64) / n as f64))?;
    let weight_ratio: Vec<f64> = weight_sum
        .iter()
        .enumerate()
        .map(|(i, s)| s / wp.P(i as i64 + 1))
        .collect();
    checks.push(Check::new(
        "weight-sum-ratio",
        GrowthReport::from_history("sum P_n / n = O(P_m)", 1, &weight_ratio, thresholds),
    ));

    let scaled = !matches!(variant, Variant::AlmostIncreasing);
    let tk: Vec<f64> = (1..=horizon)
        .map(|n| {
            let base = abs_pow(t.value(n), k);
            if scaled {
                base / xv(n).powf(k - 1.0)
            } else {
                base
            }
        })
        .collect();
    let over_x = |sums: Vec<f64>| -> Vec<f64> {
        sums.iter()
            .enumerate()
            .map(|(i, s)| s / xv(i + 1))
            .collect()
    };
    let mean_sum = over_x(running(horizon, |n| {
        Ok(wp.p(n as i64) / wp.P(n as i64) * tk[n - 1])
    })?);
    let harmonic_sum = over_x(running(horizon, |n| Ok(tk[n - 1] / n as f64))?);
    let (mean_id, mean_claim, harm_id, harm_claim) = if scaled {
        (
            "weighted-mean-power-sum-scaled",
            "sum (p_n/P_n) |t_n|^k / X_n^(k-1) = O(X_m)",
            "harmonic-power-sum-scaled",
            "sum |t_n|^k / (n X_n^(k-1)) = O(X_m)",
        )
    } else {
        (
            "weighted-mean-power-sum",
            "sum (p_n/P_n) |t_n|^k = O(X_m)",
            "harmonic-power-sum",
            "sum |t_n|^k / n = O(X_m)",
        )
    };
    checks.push(Check::new(
        mean_id,
        GrowthReport::from_history(mean_claim, 1, &mean_sum, thresholds),
    ));
    checks.push(Check::new(
        harm_id,
        GrowthReport::from_history(harm_claim, 1, &harmonic_sum, thresholds),
    ));

    let (decay, variation) = check_lemma(lam, x, horizon, thresholds)?;
    checks.push(Check::new("difference-decay", decay));
    checks.push(Check::new("majorant-variation-sum", variation));

    let (class_constant, class_report) = match variant {
        Variant::AlmostIncreasing => {
            almost_increasing_diagnostic(x, horizon, ALMOST_INCREASING_FLOOR, thresholds)?
        }
        Variant::QuasiSigma { sigma } => quasi_f_power_check(x, sigma, 0.0, horizon, thresholds)?,
        Variant::QuasiF { sigma, beta } => {
            quasi_f_power_check(x, sigma, beta, horizon, thresholds)?
        }
    };
    checks.push(Check::new("majorant-class", class_report));

    let overall = Verdict::combine(checks.iter().map(|c| c.report.verdict));
    Ok(HypothesisLedger {
        variant,
        checks,
        class_constant,
        overall,
    })
}
