//! Finite-prefix grading of `= O(·)` and boundedness claims.
//!
//! A [`GrowthReport`] summarizes a quantity's history over a scanned prefix:
//! its supremum, where the supremum was attained, and the least-squares slope
//! of `log|q_m|` against `log m` over the last half of the prefix. The slope
//! alone decides the verdict, so the same history always grades the same way.

use alloc::string::String;
use core::fmt;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConsistentWithBounded,
    Diverging,
    Inconclusive,
    /// An exact (non-asymptotic) condition failed on the scanned range.
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConsistentWithBounded => "consistent-with-bounded",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Violated => "violated",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::ConsistentWithBounded
    }

    /// Combines constituent verdicts: any violation dominates, then
    /// divergence, then inconclusive evidence.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::ConsistentWithBounded;
        for v in verdicts {
            out = match (out, v) {
                (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
                (Verdict::Diverging, _) | (_, Verdict::Diverging) => Verdict::Diverging,
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                _ => Verdict::ConsistentWithBounded,
            };
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Slope thresholds: below `bounded_below` is bounded, above `diverging_above`
/// is diverging, in between inconclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub bounded_below: f64,
    pub diverging_above: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            bounded_below: 0.02,
            diverging_above: 0.1,
        }
    }
}

impl Thresholds {
    pub fn grade(&self, tail_slope: f64) -> Verdict {
        if tail_slope.is_nan() {
            Verdict::Inconclusive
        } else if tail_slope < self.bounded_below {
            Verdict::ConsistentWithBounded
        } else if tail_slope > self.diverging_above {
            Verdict::Diverging
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub claim: String,
    pub sup_ratio: f64,
    pub argmax_index: usize,
    /// `NaN` for exact checks, where no trend is fitted.
    pub tail_slope: f64,
    pub verdict: Verdict,
}

impl GrowthReport {
    /// Grades the history `values[i] = q(first_index + i)`.
    pub fn from_history(
        claim: impl Into<String>,
        first_index: usize,
        values: &[f64],
        thresholds: &Thresholds,
    ) -> Self {
        let (sup_ratio, argmax_index) = sup_with_index(first_index, values);
        let tail_slope = tail_slope(first_index, values);
        let verdict = if !sup_ratio.is_finite() {
            Verdict::Diverging
        } else {
            thresholds.grade(tail_slope)
        };
        Self {
            claim: claim.into(),
            sup_ratio,
            argmax_index,
            tail_slope,
            verdict,
        }
    }

    /// Report for an exact condition: `worst` is the largest violation
    /// magnitude found (attained at `at`), compared against `tolerance`.
    pub fn exact(claim: impl Into<String>, worst: f64, at: usize, tolerance: f64) -> Self {
        let verdict = if worst <= tolerance {
            Verdict::ConsistentWithBounded
        } else {
            Verdict::Violated
        };
        Self {
            claim: claim.into(),
            sup_ratio: worst.max(0.0),
            argmax_index: at,
            tail_slope: f64::NAN,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// A named condition together with its finite-prefix report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: &'static str,
    pub report: GrowthReport,
}

impl Check {
    pub fn new(id: &'static str, report: GrowthReport) -> Self {
        Self { id, report }
    }
}

fn sup_with_index(first_index: usize, values: &[f64]) -> (f64, usize) {
    let mut sup = 0.0;
    let mut at = first_index;
    for (i, &v) in values.iter().enumerate() {
        let a = v.abs();
        if a.is_nan() || a > sup {
            sup = if a.is_nan() { f64::INFINITY } else { a };
            at = first_index + i;
            if a.is_nan() {
                break;
            }
        }
    }
    (sup, at)
}

/// Least-squares slope of `ln|q_m|` on `ln m` over the last half of the
/// history. Zero or non-finite entries and `m = 0` are skipped; with fewer
/// than two usable points the slope is zero.
pub fn tail_slope(first_index: usize, values: &[f64]) -> f64 {
    let half = values.len() / 2;
    let mut count = 0.0;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (i, &v) in values.iter().enumerate().skip(half) {
        let m = first_index + i;
        let a = v.abs();
        if m == 0 || a == 0.0 || !a.is_finite() {
            continue;
        }
        let x = (m as f64).ln();
        let y = a.ln();
        count += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if count < 2.0 {
        return 0.0;
    }
    let denom = count * sxx - sx * sx;
    if denom <= 0.0 {
        return 0.0;
    }
    (count * sxy - sx * sy) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn slope_of_power_law() {
        let v: Vec<f64> = (1..=1000).map(|m| (m as f64).powf(0.5)).collect();
        assert!((tail_slope(1, &v) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn constant_history_is_bounded() {
        let v = [3.0; 50];
        let r = GrowthReport::from_history("c = O(1)", 1, &v, &Thresholds::default());
        assert_eq!(r.verdict, Verdict::ConsistentWithBounded);
        assert_eq!(r.sup_ratio, 3.0);
        assert_eq!(r.argmax_index, 1);
    }

    #[test]
    fn zero_history_has_zero_slope() {
        let v = [0.0; 20];
        assert_eq!(tail_slope(1, &v), 0.0);
    }

    #[test]
    fn grading_bands() {
        let t = Thresholds::default();
        assert_eq!(t.grade(0.0), Verdict::ConsistentWithBounded);
        assert_eq!(t.grade(0.05), Verdict::Inconclusive);
        assert_eq!(t.grade(0.5), Verdict::Diverging);
    }

    #[test]
    fn nan_history_diverges() {
        let v = [1.0, f64::NAN, 2.0];
        let r = GrowthReport::from_history("x", 0, &v, &Thresholds::default());
        assert_eq!(r.verdict, Verdict::Diverging);
        assert_eq!(r.argmax_index, 1);
    }

    #[test]
    fn combine_orders_severity() {
        use Verdict::*;
        assert_eq!(
            Verdict::combine([ConsistentWithBounded, Inconclusive]),
            Inconclusive
        );
        assert_eq!(Verdict::combine([Inconclusive, Diverging]), Diverging);
        assert_eq!(Verdict::combine([Diverging, Violated]), Violated);
        assert_eq!(Verdict::combine([]), ConsistentWithBounded);
    }
}
