//! Lazy real sequences, difference operators, partial sums and weight systems.
//!
//! A [`LazySequence`] is a cheap-to-clone handle onto a memo table and a
//! generator. Forcing index `n` evaluates the generator once for every index
//! from the start up to `n`, strictly in increasing order, so generators may
//! carry running state (partial sums use this). Clones share the memo table.
//!
//! Forcing needs exclusive access and the handle is single-threaded; for
//! concurrent reads take a [`Prefix`], which is an owned, frozen copy.

mod classes;
pub mod expr;
mod weights;

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

pub use classes::{
    almost_increasing_diagnostic, bounded_variation_diagnostic, quasi_f_power_check, quasi_f_weight,
};
pub use weights::{make_weights, WeightPrefix, WeightSystem};

type Generator = Box<dyn FnMut(usize) -> f64>;

struct Inner {
    start: usize,
    /// Index one past the last valid entry, for finite tables.
    end: Option<usize>,
    cache: Vec<f64>,
    generator: Generator,
}

impl Inner {
    fn force(&mut self, n: usize) {
        while self.start + self.cache.len() <= n {
            let i = self.start + self.cache.len();
            let v = (self.generator)(i);
            self.cache.push(v);
        }
    }
}

#[derive(Clone)]
pub struct LazySequence {
    inner: Rc<RefCell<Inner>>,
}

impl fmt::Debug for LazySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.borrow();
        f.debug_struct("LazySequence")
            .field("start", &inner.start)
            .field("forced", &inner.cache.len())
            .finish()
    }
}

impl LazySequence {
    /// Sequence defined from `start` on by `generator`, which is called once
    /// per index in increasing order.
    pub fn new(start: usize, generator: impl FnMut(usize) -> f64 + 'static) -> Self {
        Self {
            inner: Rc::new(RefCell::new(Inner {
                start,
                end: None,
                cache: Vec::new(),
                generator: Box::new(generator),
            })),
        }
    }

    /// Finite sequence with `values[i]` at index `start + i`.
    pub fn from_table(start: usize, values: Vec<f64>) -> Self {
        let end = start + values.len();
        let seq = Self::new(start, move |n| {
            panic!(
                "table sequence exhausted at index {n} (valid up to {})",
                end - 1
            )
        });
        {
            let mut inner = seq.inner.borrow_mut();
            inner.cache = values;
            inner.end = Some(end);
        }
        seq
    }

    pub fn constant(start: usize, c: f64) -> Self {
        Self::new(start, move |_| c)
    }

    pub fn zeros(start: usize) -> Self {
        Self::constant(start, 0.0)
    }

    /// Series with a single unit term at index 0: `(1, 0, 0, ...)`.
    pub fn unit_impulse() -> Self {
        Self::new(0, |n| if n == 0 { 1.0 } else { 0.0 })
    }

    /// Sequence whose terms are the evaluated expression with `n` bound to the index.
    pub fn from_expr(start: usize, e: expr::Expr) -> Self {
        Self::new(start, move |n| e.eval(n as f64))
    }

    pub fn start_index(&self) -> usize {
        self.inner.borrow().start
    }

    /// Last valid index for finite tables.
    pub fn last_index(&self) -> Option<usize> {
        self.inner.borrow().end.map(|e| e.saturating_sub(1))
    }

    /// Number of memoized entries.
    pub fn forced_len(&self) -> usize {
        self.inner.borrow().cache.len()
    }

    pub fn try_value(&self, n: usize) -> Result<f64> {
        let mut inner = self
            .inner
            .try_borrow_mut()
            .expect("sequence generator re-entered its own sequence");
        if n < inner.start {
            return Err(Error::IndexBelowStart {
                index: n,
                start: inner.start,
            });
        }
        if let Some(end) = inner.end {
            if n >= end {
                return Err(Error::TableExhausted {
                    index: n,
                    len: end - inner.start,
                });
            }
        }
        inner.force(n);
        Ok(inner.cache[n - inner.start])
    }

    /// Value at `n`, forcing the prefix.
    ///
    /// Panics when `n` is below the start index or past the end of a table;
    /// both are caller contract violations (see [`LazySequence::try_value`]).
    pub fn value(&self, n: usize) -> f64 {
        match self.try_value(n) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    /// Value at `n`, reading indices below the start as zero. Used where a
    /// series starting at 1 is summed from 0.
    pub fn term(&self, n: usize) -> f64 {
        if n < self.start_index() {
            0.0
        } else {
            self.value(n)
        }
    }

    /// Frozen copy of the entries `start..=last` (empty when `last < start`).
    pub fn prefix(&self, last: usize) -> Prefix {
        let start = self.start_index();
        if last < start {
            return Prefix {
                start,
                values: Vec::new(),
            };
        }
        self.value(last);
        let inner = self.inner.borrow();
        Prefix {
            start,
            values: inner.cache[..=last - start].to_vec(),
        }
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64 + 'static) -> LazySequence {
        let src = self.clone();
        LazySequence::new(self.start_index(), move |n| f(src.value(n)))
    }

    pub fn zip_with(
        &self,
        other: &LazySequence,
        mut f: impl FnMut(f64, f64) -> f64 + 'static,
    ) -> LazySequence {
        let (a, b) = (self.clone(), other.clone());
        let start = a.start_index().max(b.start_index());
        LazySequence::new(start, move |n| f(a.value(n), b.value(n)))
    }
}

/// Owned snapshot of a forced prefix, addressed by absolute index.
#[derive(Debug, Clone, PartialEq)]
pub struct Prefix {
    start: usize,
    values: Vec<f64>,
}

impl Prefix {
    pub fn new(start: usize, values: Vec<f64>) -> Self {
        Self { start, values }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i).copied())
    }

    /// Panics outside the snapshot.
    pub fn at(&self, n: usize) -> f64 {
        self.get(n)
            .unwrap_or_else(|| panic!("index {n} outside prefix starting at {}", self.start))
    }

    /// Zero below the start index, otherwise [`Prefix::at`].
    pub fn term(&self, n: usize) -> f64 {
        if n < self.start {
            0.0
        } else {
            self.at(n)
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.start + i, v))
    }
}

/// `s_n = Σ_{v=start}^{n} a_v`, accumulated with compensation.
pub fn partial_sums(a: &LazySequence) -> LazySequence {
    let src = a.clone();
    let mut acc = CompensatedSum::new();
    LazySequence::new(a.start_index(), move |n| {
        acc.add(src.value(n));
        acc.value()
    })
}

/// `(Δλ)_n = λ_n − λ_{n+1}`.
pub fn forward_difference(lambda: &LazySequence) -> LazySequence {
    let src = lambda.clone();
    LazySequence::new(lambda.start_index(), move |n| {
        src.value(n) - src.value(n + 1)
    })
}

/// `Δ²λ_n = Δλ_n − Δλ_{n+1}`.
pub fn second_difference(lambda: &LazySequence) -> LazySequence {
    forward_difference(&forward_difference(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn impulse_partial_sums_are_one() {
        let s = partial_sums(&LazySequence::unit_impulse());
        for n in 0..20 {
            assert_eq!(s.value(n), 1.0);
        }
    }

    #[test]
    fn geometric_partial_sums() {
        let a = LazySequence::new(0, |n| 0.5f64.powi(n as i32));
        let s = partial_sums(&a);
        for n in 0..60 {
            let oracle = 2.0 - 0.5f64.powi(n as i32);
            assert!((s.value(n) - oracle).abs() <= 1e-15 * oracle);
        }
    }

    #[test]
    fn zero_series_sums_to_zero() {
        let s = partial_sums(&LazySequence::zeros(0));
        assert_eq!(s.prefix(10).as_slice(), &[0.0; 11]);
    }

    #[test]
    fn partial_sums_force_each_term_once() {
        let calls = Rc::new(RefCell::new(0usize));
        let c = calls.clone();
        let a = LazySequence::new(0, move |n| {
            *c.borrow_mut() += 1;
            n as f64
        });
        let s = partial_sums(&a);
        s.value(10);
        s.value(5);
        s.value(10);
        assert_eq!(*calls.borrow(), 11);
        assert_eq!(s.value(10), 55.0);
    }

    #[test]
    fn forcing_stops_at_requested_index() {
        let a = LazySequence::new(1, |n| 1.0 / n as f64);
        a.value(7);
        assert_eq!(a.forced_len(), 7);
    }

    #[test]
    fn difference_of_harmonic() {
        let lam = LazySequence::new(1, |n| 1.0 / n as f64);
        let d = forward_difference(&lam);
        for n in 1..100usize {
            let oracle = 1.0 / (n * (n + 1)) as f64;
            assert!((d.value(n) - oracle).abs() <= 4e-16 * oracle * n as f64);
        }
    }

    #[test]
    fn difference_of_constant_is_zero() {
        let d = forward_difference(&LazySequence::constant(0, 3.5));
        assert!((0..10).all(|n| d.value(n) == 0.0));
    }

    #[test]
    fn second_difference_matches_composition() {
        let lam = LazySequence::new(0, |n| ((n as f64) * 0.37).sin() + 1.0 / (n as f64 + 1.0));
        let d2 = second_difference(&lam);
        for n in 0..50 {
            let direct = (lam.value(n) - lam.value(n + 1)) - (lam.value(n + 1) - lam.value(n + 2));
            assert_eq!(d2.value(n), direct);
        }
    }

    #[test]
    fn below_start_is_a_usage_error() {
        let a = LazySequence::new(1, |n| n as f64);
        assert_eq!(
            a.try_value(0),
            Err(Error::IndexBelowStart { index: 0, start: 1 })
        );
        assert_eq!(a.term(0), 0.0);
    }

    #[test]
    fn table_bounds() {
        let t = LazySequence::from_table(0, vec![1.0, 2.0, 3.0]);
        assert_eq!(t.value(2), 3.0);
        assert_eq!(t.last_index(), Some(2));
        assert_eq!(
            t.try_value(3),
            Err(Error::TableExhausted { index: 3, len: 3 })
        );
    }

    #[test]
    fn prefix_addresses_absolute_indices() {
        let a = LazySequence::new(1, |n| n as f64 * 2.0);
        let p = a.prefix(4);
        assert_eq!(p.start(), 1);
        assert_eq!(p.at(4), 8.0);
        assert_eq!(p.term(0), 0.0);
        assert_eq!(p.get(5), None);
    }
}
