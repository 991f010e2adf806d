use alloc::vec::Vec;

use super::{CompanionWalker, TriangularMethod};
use crate::error::{Error, Result};
use crate::growth::{Check, GrowthReport, Thresholds};
use crate::numeric::CompensatedSum;
use crate::sequences::WeightSystem;

/// Tolerance for `ā_n0 = 1`.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// The four structural conditions on a method, scanned over `n <= N`:
///
/// * `row-sum-one`: `ā_n0 = 1` (exact, worst `|ā_n0 − 1|`);
/// * `column-monotone`: `a_{n−1,v} >= a_nv` for `n >= v + 1` (exact,
///   non-strict; worst positive `a_nv − a_{n−1,v}`);
/// * `diagonal-vs-weight`: `a_nn P_n / p_n` graded as `O(1)`;
/// * `hat-column-sum`: `(Σ_{v=1}^{n−1} â_{n,v+1} / v) / a_nn` graded as
///   `O(1)`, from `n = 2`.
pub fn check_matrix_conditions(
    method: &TriangularMethod,
    w: &WeightSystem,
    horizon: usize,
    thresholds: &Thresholds,
) -> Result<Vec<Check>> {
    if horizon < 2 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: horizon as f64,
            requirement: "N >= 2",
        });
    }
    let mut walker = CompanionWalker::new(method, 0)?;
    let (mut sum_worst, mut sum_at) = (0.0f64, 0usize);
    let (mut mono_worst, mut mono_at) = (0.0f64, 0usize);
    let mut diag_history = Vec::with_capacity(horizon + 1);
    let mut hat_history = Vec::with_capacity(horizon);
    for n in 0..=horizon {
        let row = walker.advance()?;
        let dev = (row.bar[0] - 1.0).abs();
        if dev > sum_worst || dev.is_nan() {
            sum_worst = if dev.is_nan() { f64::INFINITY } else { dev };
            sum_at = n;
        }
        if n >= 1 {
            for v in 0..n {
                let excess = row.column_difference[v];
                if excess > mono_worst {
                    mono_worst = excess;
                    mono_at = n;
                }
            }
        }
        let ann = row.entries[n];
        let p = w.weight(n as i64)?;
        let big_p = w.total(n as i64)?;
        diag_history.push(ann * big_p / p);
        if n >= 2 {
            let s: CompensatedSum = (1..n).map(|v| row.hat[v + 1] / v as f64).collect();
            hat_history.push(s.value() / ann);
        }
    }
    Ok(alloc::vec![
        Check::new(
            "row-sum-one",
            GrowthReport::exact("bar a_n0 = 1", sum_worst, sum_at, ROW_SUM_TOLERANCE),
        ),
        Check::new(
            "column-monotone",
            GrowthReport::exact("a_(n-1)v >= a_nv for n >= v+1", mono_worst, mono_at, 0.0),
        ),
        Check::new(
            "diagonal-vs-weight",
            GrowthReport::from_history("a_nn = O(p_n / P_n)", 0, &diag_history, thresholds),
        ),
        Check::new(
            "hat-column-sum",
            GrowthReport::from_history(
                "sum_(v=1)^(n-1) hat a_n(v+1) / v = O(a_nn)",
                2,
                &hat_history,
                thresholds,
            ),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::Verdict;
    use crate::sequences::{make_weights, LazySequence};
    use alloc::vec;

    #[test]
    fn weighted_means_pass_first_three() {
        for p in [
            LazySequence::constant(0, 1.0),
            LazySequence::new(0, |n| n as f64 + 1.0),
            LazySequence::new(0, |n| 1.0 / (n as f64 + 1.0)),
        ] {
            let w = make_weights(p).unwrap();
            let m = TriangularMethod::weighted_mean(&w);
            let r = check_matrix_conditions(&m, &w, 300, &Thresholds::default()).unwrap();
            for c in &r[..3] {
                assert!(c.report.passed(), "{}", c.id);
                assert!(c.report.sup_ratio <= 1.0 + 1e-12, "{}", c.id);
            }
        }
    }

    #[test]
    fn unit_mean_hat_sum_oracle() {
        let w = WeightSystem::unit();
        let m = TriangularMethod::weighted_mean(&w);
        let n_max = 500;
        let r = check_matrix_conditions(&m, &w, n_max, &Thresholds::default()).unwrap();
        // (Σ_{v=1}^{n−1} (v+1)/(v n (n+1))) (n+1) = (n − 1 + H_{n−1}) / n
        let oracle = |n: usize| {
            let h: f64 = (1..n).map(|v| 1.0 / v as f64).sum();
            (n as f64 - 1.0 + h) / n as f64
        };
        let best = (2..=n_max).map(oracle).fold(0.0, f64::max);
        assert!((r[3].report.sup_ratio - best).abs() < 1e-14);
        assert!(r[3].report.passed());
    }

    #[test]
    fn monotonicity_violation_is_flagged() {
        let m = TriangularMethod::from_rows(vec![vec![1.0], vec![0.5, 0.5], vec![0.8, 0.1, 0.1]])
            .unwrap();
        let w = WeightSystem::unit();
        let r = check_matrix_conditions(&m, &w, 2, &Thresholds::default()).unwrap();
        assert!(r[0].report.passed());
        assert_eq!(r[1].report.verdict, Verdict::Violated);
        assert!((r[1].report.sup_ratio - 0.3).abs() < 1e-15);
        assert_eq!(r[1].report.argmax_index, 2);
    }

    #[test]
    fn row_sum_violation_is_flagged() {
        let m = TriangularMethod::from_rows(vec![vec![1.0], vec![0.5, 0.6], vec![0.3, 0.3, 0.3]])
            .unwrap();
        let r =
            check_matrix_conditions(&m, &WeightSystem::unit(), 2, &Thresholds::default()).unwrap();
        assert_eq!(r[0].report.verdict, Verdict::Violated);
        assert_eq!(r[0].report.argmax_index, 1);
    }
}
