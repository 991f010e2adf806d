//! Finite-prefix evidence for sequence classes: bounded variation,
//! quasi-f-power increase and almost increase.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use super::LazySequence;
use crate::error::{Error, Result};
use crate::growth::{GrowthReport, Thresholds};
use crate::numeric::CompensatedSum;

/// Partial sums of `Σ |Δλ_n|` from the start index up to `horizon`.
pub fn bounded_variation_diagnostic(
    lambda: &LazySequence,
    horizon: usize,
    thresholds: &Thresholds,
) -> Result<GrowthReport> {
    if horizon < 2 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: horizon as f64,
            requirement: "N >= 2",
        });
    }
    let start = lambda.start_index();
    let values = lambda.prefix(horizon + 1);
    let mut acc = CompensatedSum::new();
    let history: Vec<f64> = (start..=horizon)
        .map(|n| {
            acc.add((values.at(n) - values.at(n + 1)).abs());
            acc.value()
        })
        .collect();
    Ok(GrowthReport::from_history(
        "sum |lambda_n - lambda_(n+1)| < inf",
        start,
        &history,
        thresholds,
    ))
}

/// `f_n = n^σ (ln n)^β`, as used by [`quasi_f_power_check`].
pub fn quasi_f_weight(n: usize, sigma: f64, beta: f64) -> f64 {
    let x = n as f64;
    let base = x.powf(sigma);
    if beta == 0.0 {
        base
    } else {
        base * x.ln().powf(beta)
    }
}

/// Smallest `K` with `K f_n X_n >= f_m X_m` for `2 <= m <= n <= N`, where
/// `f_n = n^σ (ln n)^β`.
///
/// The scan starts at 2 because `f_1 = 0` whenever `β > 0`. One pass with a
/// running maximum of `f_m X_m` suffices; the report grades the history of
/// the running `K` over the prefix.
pub fn quasi_f_power_check(
    x: &LazySequence,
    sigma: f64,
    beta: f64,
    horizon: usize,
    thresholds: &Thresholds,
) -> Result<(f64, GrowthReport)> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: sigma,
            requirement: "0 < sigma < 1",
        });
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            requirement: "beta >= 0",
        });
    }
    if horizon < 3 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: horizon as f64,
            requirement: "N >= 3",
        });
    }
    let mut running_max = 0.0f64;
    let mut k_min = 0.0f64;
    let mut argmax = 2;
    let mut history = Vec::with_capacity(horizon - 1);
    for n in 2..=horizon {
        let xn = x.value(n);
        if !(xn > 0.0 && xn.is_finite()) {
            return Err(Error::Domain {
                quantity: "X",
                index: n,
                value: xn,
            });
        }
        let g = quasi_f_weight(n, sigma, beta) * xn;
        running_max = running_max.max(g);
        let ratio = running_max / g;
        if ratio > k_min {
            k_min = ratio;
            argmax = n;
        }
        history.push(k_min);
    }
    let mut report = GrowthReport::from_history(
        format!("K f_n X_n >= f_m X_m (sigma = {sigma}, beta = {beta})"),
        2,
        &history,
        thresholds,
    );
    report.argmax_index = argmax;
    Ok((k_min, report))
}

/// Best lower constant `M = inf b_n / c_n` for the envelope
/// `c_n = max_{m≤n} b_m`, which is increasing with upper constant 1.
///
/// The report grades the history of `c_n / b_n`'s running supremum (that is,
/// `1/M` on each prefix); the verdict additionally requires `M >= floor`.
pub fn almost_increasing_diagnostic(
    b: &LazySequence,
    horizon: usize,
    floor: f64,
    thresholds: &Thresholds,
) -> Result<(f64, GrowthReport)> {
    let start = b.start_index();
    let mut envelope = 0.0f64;
    let mut inv_m = 0.0f64;
    let mut history = Vec::new();
    let mut argmax = start;
    for n in start..=horizon {
        let bn = b.value(n);
        if !(bn > 0.0 && bn.is_finite()) {
            return Err(Error::Domain {
                quantity: "b",
                index: n,
                value: bn,
            });
        }
        envelope = envelope.max(bn);
        let r = envelope / bn;
        if r > inv_m {
            inv_m = r;
            argmax = n;
        }
        history.push(inv_m);
    }
    let m = 1.0 / inv_m;
    let mut report = GrowthReport::from_history(
        "M c_n <= b_n <= c_n with c_n = max_(m<=n) b_m",
        start,
        &history,
        thresholds,
    );
    report.argmax_index = argmax;
    if m < floor {
        report.verdict = crate::growth::Verdict::Diverging;
    }
    Ok((m, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::Verdict;

    fn thr() -> Thresholds {
        Thresholds::default()
    }

    #[test]
    fn harmonic_variation_telescopes() {
        let lam = LazySequence::new(1, |n| 1.0 / n as f64);
        let r = bounded_variation_diagnostic(&lam, 1000, &thr()).unwrap();
        assert!((r.sup_ratio - (1.0 - 1.0 / 1001.0)).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::ConsistentWithBounded);
    }

    #[test]
    fn alternating_variation_diverges() {
        let lam = LazySequence::new(0, |n| if n % 2 == 0 { 1.0 } else { -1.0 });
        let r = bounded_variation_diagnostic(&lam, 500, &thr()).unwrap();
        // |Δλ_n| = 2 for n = 0..=500
        assert_eq!(r.sup_ratio, 2.0 * 501.0);
        assert_eq!(r.verdict, Verdict::Diverging);
    }

    #[test]
    fn constant_has_zero_variation() {
        let r = bounded_variation_diagnostic(&LazySequence::constant(0, 2.0), 10, &thr()).unwrap();
        assert_eq!(r.sup_ratio, 0.0);
        assert!(r.passed());
    }

    #[test]
    fn increasing_product_gives_unit_constant() {
        let x = LazySequence::new(1, |n| (n as f64).sqrt());
        let (k, r) = quasi_f_power_check(&x, 0.6, 0.0, 1000, &thr()).unwrap();
        assert_eq!(k, 1.0);
        assert!(r.passed());
        let (k, _) =
            quasi_f_power_check(&LazySequence::constant(0, 4.0), 0.3, 0.0, 200, &thr()).unwrap();
        assert_eq!(k, 1.0);
    }

    #[test]
    fn decreasing_majorant_is_rejected() {
        let x = LazySequence::new(1, |n| 1.0 / n as f64);
        let (k, r) = quasi_f_power_check(&x, 0.5, 0.0, 1000, &thr()).unwrap();
        // f_n X_n = n^(-1/2): maximal ratio at m = 2, n = N
        assert!((k - (1000.0f64 / 2.0).sqrt()).abs() < 1e-12);
        assert_eq!(r.argmax_index, 1000);
        assert_eq!(r.verdict, Verdict::Diverging);
    }

    #[test]
    fn quasi_f_parameter_and_domain_errors() {
        let x = LazySequence::constant(0, 1.0);
        assert!(quasi_f_power_check(&x, 1.0, 0.0, 10, &thr()).is_err());
        assert!(quasi_f_power_check(&x, 0.5, -1.0, 10, &thr()).is_err());
        let bad = LazySequence::new(0, |n| if n == 7 { -1.0 } else { 1.0 });
        assert_eq!(
            quasi_f_power_check(&bad, 0.5, 0.0, 10, &thr()).unwrap_err(),
            Error::Domain {
                quantity: "X",
                index: 7,
                value: -1.0
            }
        );
    }

    #[test]
    fn increasing_sequence_is_almost_increasing() {
        let b = LazySequence::new(1, |n| n as f64);
        let (m, r) = almost_increasing_diagnostic(&b, 100, 1e-6, &thr()).unwrap();
        assert_eq!(m, 1.0);
        assert!(r.passed());
    }

    #[test]
    fn oscillating_linear_envelope() {
        let b = LazySequence::new(1, |n| n as f64 * if n % 2 == 0 { 1.0 } else { 1.0 / 3.0 });
        let n_max = 1001;
        let (m, r) = almost_increasing_diagnostic(&b, n_max, 1e-6, &thr()).unwrap();
        // oracle: envelope by direct scan
        let mut c: f64 = 0.0;
        let mut worst: f64 = 0.0;
        for n in 1..=n_max {
            let bn = b.value(n);
            c = c.max(bn);
            worst = worst.max(c / bn);
        }
        assert_eq!(m, 1.0 / worst);
        assert!((m - 1.0 / 3.0).abs() < 1e-3);
        assert!(r.passed());
    }

    #[test]
    fn decaying_sequence_is_not_almost_increasing() {
        let b = LazySequence::new(1, |n| 1.0 / n as f64);
        let (m, r) = almost_increasing_diagnostic(&b, 1000, 1e-6, &thr()).unwrap();
        assert!((m - 1.0 / 1000.0).abs() < 1e-15);
        assert_eq!(r.verdict, Verdict::Diverging);
    }
}
