use alloc::format;
use alloc::vec::Vec;

use crate::error::{check_k, Error, Result};
use crate::matrices::{Coefficients, CompanionWalker, TriangularMethod};
use crate::numeric::{abs_pow, Dd};
use crate::sequences::{LazySequence, WeightSystem};

use super::SummabilityLedger;

fn check_horizon(horizon: usize) -> Result<()> {
    if horizon == 0 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: 0.0,
            requirement: "N >= 1",
        });
    }
    Ok(())
}

/// `|C,α|_k` ledger of `(1/n)|t_n^α|^k`, `n = 1..=N`.
///
/// The alternate terms `n^{k−1}|u_n^α − u_{n−1}^α|^k` take the increment of
/// the `u`-means through the companion row of the Cesàro matrix, so neither
/// form suffers the cancellation of differencing two nearby means.
pub fn index_cesaro(
    a: &LazySequence,
    alpha: f64,
    k: f64,
    horizon: usize,
) -> Result<SummabilityLedger> {
    check_k(k)?;
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            requirement: "alpha > -1",
        });
    }
    check_horizon(horizon)?;
    let mut lower = Coefficients::new(alpha - 1.0);
    let mut upper = Coefficients::new(alpha);
    lower.ensure(horizon);
    upper.ensure(horizon);
    // v a_v, exact in double-double
    let weighted: Vec<Dd> = (0..=horizon)
        .map(|v| Dd::new(a.term(v)) * v as f64)
        .collect();

    let method = TriangularMethod::cesaro_unchecked(alpha).with_max_rows(horizon + 1);
    let mut walker = CompanionWalker::new(&method, 1)?;
    let mut terms = Vec::with_capacity(horizon);
    let mut alternate = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let mut t = Dd::ZERO;
        for (v, w) in weighted.iter().enumerate().take(n + 1).skip(1) {
            t += lower.get(n - v) * *w;
        }
        let t = (t / upper.get(n)).to_f64();
        terms.push(abs_pow(t, k) / n as f64);

        let du = walker.advance()?.apply_hat(0, |v| a.term(v));
        alternate.push(abs_pow(n as f64, k - 1.0) * abs_pow(du, k));
    }
    Ok(
        SummabilityLedger::from_terms(format!("|C,{alpha}|_k"), k, 1, terms)
            .with_alternate(alternate),
    )
}

/// `|N̄,p_n|_k` ledger of `(P_n/p_n)^{k−1}|t_n − t_{n−1}|^k`, `n = 1..=N`,
/// with `t` the Riesz mean of the partial sums.
///
/// Uses `t_n − t_{n−1} = p_n/(P_n P_{n−1}) Σ_{v=1}^{n} P_{v−1} a_v`.
pub fn index_weighted(
    a: &LazySequence,
    w: &WeightSystem,
    k: f64,
    horizon: usize,
) -> Result<SummabilityLedger> {
    check_k(k)?;
    check_horizon(horizon)?;
    let wp = w.prefix(horizon)?;
    let mut acc = Dd::ZERO;
    let mut terms = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let n_i = n as i64;
        acc += wp.total_dd(n_i - 1) * a.term(n);
        let dt = (acc * wp.p(n_i) / (wp.total_dd(n_i) * wp.total_dd(n_i - 1))).to_f64();
        terms.push(abs_pow(wp.ratio(n), k - 1.0) * abs_pow(dt, k));
    }
    Ok(SummabilityLedger::from_terms("|N,p_n|_k", k, 1, terms))
}

/// `|A,p_n|_k` ledger of `(P_n/p_n)^{k−1}|Δ̄A_n(s)|^k`, `n = 1..=N`.
pub fn index_matrix(
    a: &LazySequence,
    method: &TriangularMethod,
    w: &WeightSystem,
    k: f64,
    horizon: usize,
) -> Result<SummabilityLedger> {
    check_k(k)?;
    check_horizon(horizon)?;
    let wp = w.prefix(horizon)?;
    let values: Vec<f64> = (0..=horizon).map(|v| a.term(v)).collect();
    let mut walker = CompanionWalker::new(method, 1)?;
    let mut terms = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let d = walker.advance()?.apply_hat(0, |v| values[v]);
        terms.push(abs_pow(wp.ratio(n), k - 1.0) * abs_pow(d, k));
    }
    Ok(SummabilityLedger::from_terms(
        format!("|A,p_n|_k, A = {}", method.label()),
        k,
        1,
        terms,
    ))
}

/// `a_n λ_n`.
pub fn factored_series(a: &LazySequence, lambda: &LazySequence) -> LazySequence {
    a.zip_with(lambda, |x, l| x * l)
}

/// The `(C,1)` mean of `(n a_n)`: `t_n = (1/(n+1)) Σ_{v=1}^{n} v a_v`, with
/// `t_0 = 0`.
#[derive(Debug, Clone)]
pub struct CesaroOneMean {
    t: LazySequence,
}

impl CesaroOneMean {
    pub fn of(a: &LazySequence) -> Self {
        let src = a.clone();
        let mut acc = Dd::ZERO;
        let t = LazySequence::new(0, move |n| {
            if n == 0 {
                return 0.0;
            }
            acc += Dd::new(src.term(n)) * n as f64;
            (acc / (n as f64 + 1.0)).to_f64()
        });
        Self { t }
    }

    /// Series (from index 1) whose mean is `t`; `t_0` is taken as 0 whatever
    /// the sequence says, since the mean always vanishes there.
    pub fn invert(t: &LazySequence) -> LazySequence {
        let src = t.clone();
        LazySequence::new(1, move |n| {
            let prev = if n == 1 { 0.0 } else { src.value(n - 1) };
            let x = Dd::new(src.value(n)) * (n as f64 + 1.0) - Dd::new(prev) * n as f64;
            (x / n as f64).to_f64()
        })
    }

    pub fn sequence(&self) -> &LazySequence {
        &self.t
    }

    pub fn value(&self, n: usize) -> f64 {
        self.t.value(n)
    }
}
