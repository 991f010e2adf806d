use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::numeric::Dd;
use crate::sequences::LazySequence;

/// `A_0^β, A_1^β, ..` by the recurrence `A_m^β = A_{m−1}^β (β + m) / m`.
#[derive(Debug, Clone)]
pub(crate) struct Coefficients {
    beta: f64,
    values: Vec<Dd>,
}

impl Coefficients {
    pub(crate) fn new(beta: f64) -> Self {
        Self {
            beta,
            values: alloc::vec![Dd::ONE],
        }
    }

    pub(crate) fn ensure(&mut self, n: usize) {
        while self.values.len() <= n {
            let m = self.values.len();
            let prev = self.values[m - 1];
            let next = prev * Dd::from_sum(self.beta, m as f64) / m as f64;
            self.values.push(next);
        }
    }

    pub(crate) fn get(&mut self, n: usize) -> Dd {
        self.ensure(n);
        self.values[n]
    }
}

/// Coefficient tables for the Cesàro matrix of order `α`.
#[derive(Debug, Clone)]
pub(crate) struct CesaroTable {
    inner: Rc<RefCell<(Coefficients, Coefficients)>>,
}

impl CesaroTable {
    pub(crate) fn new(alpha: f64) -> Self {
        Self {
            inner: Rc::new(RefCell::new((
                Coefficients::new(alpha - 1.0),
                Coefficients::new(alpha),
            ))),
        }
    }

    /// `a_nv = A_{n−v}^{α−1} / A_n^α`.
    pub(crate) fn row(&self, n: usize) -> Vec<Dd> {
        let mut guard = self.inner.borrow_mut();
        let (lower, upper) = &mut *guard;
        lower.ensure(n);
        let inv = Dd::ONE / upper.get(n);
        (0..=n).map(|v| lower.values[n - v] * inv).collect()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            requirement: "alpha > -1",
        })
    }
}

/// `A_n^α = (α+1)(α+2)..(α+n)/n!`, with `A_n^α = 0` for negative `n`.
pub fn cesaro_coefficient(alpha: f64, n: i64) -> Result<f64> {
    check_alpha(alpha)?;
    if n < 0 {
        return Ok(0.0);
    }
    Ok(Coefficients::new(alpha).get(n as usize).to_f64())
}

/// The Cesàro means `(u_n^α, t_n^α)` of `(s_n)` and `(n a_n)`.
pub fn cesaro_means(a: &LazySequence, alpha: f64, n: usize) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let mut lower = Coefficients::new(alpha - 1.0);
    lower.ensure(n);
    let den = Coefficients::new(alpha).get(n);
    let mut s = Dd::ZERO;
    let mut u = Dd::ZERO;
    let mut t = Dd::ZERO;
    for v in 0..=n {
        let av = a.term(v);
        s += av;
        let c = lower.values[n - v];
        u += c * s;
        t += c * (Dd::new(av) * v as f64);
    }
    Ok(((u / den).to_f64(), (t / den).to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        for n in 0..50 {
            assert_eq!(cesaro_coefficient(0.0, n).unwrap(), 1.0);
            assert_eq!(cesaro_coefficient(1.0, n).unwrap(), (n + 1) as f64);
        }
        assert_eq!(cesaro_coefficient(0.5, 3).unwrap(), 1.5 * 2.5 * 3.5 / 6.0);
        assert_eq!(cesaro_coefficient(0.3, -2).unwrap(), 0.0);
    }

    #[test]
    fn order_below_minus_one_rejected() {
        assert!(cesaro_coefficient(-1.0, 3).is_err());
        assert!(cesaro_means(&LazySequence::zeros(0), -2.0, 3).is_err());
    }

    #[test]
    fn impulse_has_unit_means() {
        let a = LazySequence::unit_impulse();
        for alpha in [0.25, 0.5, 1.0, 2.0] {
            for n in 0..40 {
                let (u, t) = cesaro_means(&a, alpha, n).unwrap();
                assert!((u - 1.0).abs() < 1e-15, "alpha {alpha} n {n}");
                assert_eq!(t, 0.0);
            }
        }
    }

    #[test]
    fn first_order_means() {
        let a = LazySequence::new(0, |n| (-1.0f64).powi(n as i32) / (n as f64 + 1.0));
        for n in 0..60usize {
            let (u, t) = cesaro_means(&a, 1.0, n).unwrap();
            let mut s = 0.0;
            let mut su = 0.0;
            let mut st = 0.0;
            for v in 0..=n {
                s += a.value(v);
                su += s;
                st += v as f64 * a.value(v);
            }
            let m = (n + 1) as f64;
            assert!((u - su / m).abs() < 1e-14);
            assert!((t - st / m).abs() < 1e-14);
        }
    }
}
