use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::LazySequence;
use crate::error::{Error, Result};
use crate::numeric::Dd;

struct Inner {
    p: LazySequence,
    weights: Vec<f64>,
    totals: Vec<Dd>,
}

impl Inner {
    fn ensure(&mut self, n: usize) -> Result<()> {
        while self.weights.len() <= n {
            let i = self.weights.len();
            let w = self.p.value(i);
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::Domain {
                    quantity: "weight",
                    index: i,
                    value: w,
                });
            }
            let prev = self.totals.last().copied().unwrap_or(Dd::ZERO);
            self.weights.push(w);
            self.totals.push(prev + w);
        }
        Ok(())
    }
}

/// Positive weights `p_n` with cumulative totals `P_n = Σ_{v≤n} p_v`.
///
/// Totals are carried in double-double. Negative indices read as zero.
#[derive(Clone)]
pub struct WeightSystem {
    inner: Rc<RefCell<Inner>>,
}

impl core::fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("WeightSystem")
            .field("validated", &self.inner.borrow().weights.len())
            .finish()
    }
}

/// Wraps `p` (which must start at index 0) as a weight system. Positivity is
/// checked as indices are forced.
pub fn make_weights(p: LazySequence) -> Result<WeightSystem> {
    if p.start_index() != 0 {
        return Err(Error::InvalidParameter {
            name: "weight start index",
            value: p.start_index() as f64,
            requirement: "weights are indexed from 0",
        });
    }
    Ok(WeightSystem {
        inner: Rc::new(RefCell::new(Inner {
            p,
            weights: Vec::new(),
            totals: Vec::new(),
        })),
    })
}

impl WeightSystem {
    /// `p_n = 1` for all `n`.
    pub fn unit() -> Self {
        make_weights(LazySequence::constant(0, 1.0)).expect("start index is 0")
    }

    pub fn ensure(&self, n: usize) -> Result<()> {
        self.inner.borrow_mut().ensure(n)
    }

    pub fn weight(&self, i: i64) -> Result<f64> {
        if i < 0 {
            return Ok(0.0);
        }
        let mut inner = self.inner.borrow_mut();
        inner.ensure(i as usize)?;
        Ok(inner.weights[i as usize])
    }

    /// Runs `f` on `p_0..=p_n` and `P_0..=P_n` under a single borrow.
    pub(crate) fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[f64], &[Dd]) -> R) -> Result<R> {
        let mut inner = self.inner.borrow_mut();
        inner.ensure(n)?;
        Ok(f(&inner.weights[..=n], &inner.totals[..=n]))
    }

    pub fn total_dd(&self, i: i64) -> Result<Dd> {
        if i < 0 {
            return Ok(Dd::ZERO);
        }
        let mut inner = self.inner.borrow_mut();
        inner.ensure(i as usize)?;
        Ok(inner.totals[i as usize])
    }

    pub fn total(&self, i: i64) -> Result<f64> {
        self.total_dd(i).map(Dd::to_f64)
    }

    /// Validated snapshot of `p_0..=p_n` and `P_0..=P_n`.
    pub fn prefix(&self, n: usize) -> Result<WeightPrefix> {
        let mut inner = self.inner.borrow_mut();
        inner.ensure(n)?;
        Ok(WeightPrefix {
            weights: inner.weights[..=n].to_vec(),
            totals: inner.totals[..=n].to_vec(),
        })
    }
}

/// Frozen weights with the negative-index-zero convention.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPrefix {
    weights: Vec<f64>,
    totals: Vec<Dd>,
}

impl WeightPrefix {
    pub fn last(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn p(&self, i: i64) -> f64 {
        if i < 0 {
            0.0
        } else {
            self.weights[i as usize]
        }
    }

    pub fn total_dd(&self, i: i64) -> Dd {
        if i < 0 {
            Dd::ZERO
        } else {
            self.totals[i as usize]
        }
    }

    #[allow(non_snake_case)]
    pub fn P(&self, i: i64) -> f64 {
        self.total_dd(i).to_f64()
    }

    /// `P_n / p_n`, the factor raised to `k − 1` in the weighted indices.
    pub fn ratio(&self, n: usize) -> f64 {
        (self.totals[n] / self.weights[n]).to_f64()
    }
}
