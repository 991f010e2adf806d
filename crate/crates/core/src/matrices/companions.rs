use alloc::vec;
use alloc::vec::Vec;

use super::TriangularMethod;
use crate::error::Result;
use crate::numeric::Dd;

/// Row `n` of a method together with its companion rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionRow {
    pub n: usize,
    /// `a_nv`, `v = 0..=n`.
    pub entries: Vec<f64>,
    /// `ā_nv = Σ_{i=v}^{n} a_ni`.
    pub bar: Vec<f64>,
    /// `â_nv = ā_nv − ā_{n−1,v}` (`â_00 = a_00`).
    pub hat: Vec<f64>,
    /// `a_nv − a_{n−1,v}` down a column (`a_{n−1,n} = 0`; at `n = 0` just `a_00`).
    pub column_difference: Vec<f64>,
    hat_dd: Vec<Dd>,
}

impl CompanionRow {
    /// `â_nv`, zero for `v > n`.
    pub fn hat_at(&self, v: usize) -> f64 {
        self.hat.get(v).copied().unwrap_or(0.0)
    }

    /// `Σ_{v=from}^{n} â_nv x_v`, accumulated in double-double.
    pub fn apply_hat(&self, from: usize, mut x: impl FnMut(usize) -> f64) -> f64 {
        let mut acc = Dd::ZERO;
        for v in from..=self.n {
            acc += self.hat_dd[v] * x(v);
        }
        acc.to_f64()
    }
}

/// Produces consecutive companion rows, holding only the previous row.
pub struct CompanionWalker<'m> {
    method: &'m TriangularMethod,
    next: usize,
    prev_entries: Vec<Dd>,
    prev_bar: Vec<Dd>,
    spare_bar: Vec<Dd>,
    current: Option<CompanionRow>,
}

fn suffix_sums(entries: &[Dd]) -> Vec<Dd> {
    let mut bar = vec![Dd::ZERO; entries.len()];
    let mut acc = Dd::ZERO;
    for v in (0..entries.len()).rev() {
        acc += entries[v];
        bar[v] = acc;
    }
    bar
}

impl<'m> CompanionWalker<'m> {
    /// Walker whose first [`advance`](Self::advance) yields row `first`.
    pub fn new(method: &'m TriangularMethod, first: usize) -> Result<Self> {
        let (prev_entries, prev_bar) = if first == 0 {
            (Vec::new(), Vec::new())
        } else {
            let e = method.row_dd(first - 1)?;
            let b = suffix_sums(&e);
            (e, b)
        };
        Ok(Self {
            method,
            next: first,
            prev_entries,
            prev_bar,
            spare_bar: Vec::new(),
            current: None,
        })
    }

    pub fn method(&self) -> &TriangularMethod {
        self.method
    }

    /// Index of the row the next call to [`advance`](Self::advance) produces.
    pub fn next_index(&self) -> usize {
        self.next
    }

    pub fn advance(&mut self) -> Result<&CompanionRow> {
        let n = self.next;
        let entries = self.method.row_dd(n)?;
        let mut bar = core::mem::take(&mut self.spare_bar);
        bar.clear();
        bar.resize(n + 1, Dd::ZERO);
        let mut acc = Dd::ZERO;
        for v in (0..=n).rev() {
            acc += entries[v];
            bar[v] = acc;
        }
        let row = self.current.get_or_insert_with(|| CompanionRow {
            n: 0,
            entries: Vec::new(),
            bar: Vec::new(),
            hat: Vec::new(),
            column_difference: Vec::new(),
            hat_dd: Vec::new(),
        });
        row.n = n;
        row.entries.clear();
        row.bar.clear();
        row.hat.clear();
        row.column_difference.clear();
        row.hat_dd.clear();
        for v in 0..=n {
            let (h, c) = if n == 0 {
                (entries[0], entries[0])
            } else {
                let pb = self.prev_bar.get(v).copied().unwrap_or(Dd::ZERO);
                let pe = self.prev_entries.get(v).copied().unwrap_or(Dd::ZERO);
                (bar[v] - pb, entries[v] - pe)
            };
            row.entries.push(entries[v].to_f64());
            row.bar.push(bar[v].to_f64());
            row.hat.push(h.to_f64());
            row.column_difference.push(c.to_f64());
            row.hat_dd.push(h);
        }
        self.spare_bar = core::mem::replace(&mut self.prev_bar, bar);
        self.prev_entries = entries;
        self.next = n + 1;
        Ok(self.current.as_ref().expect("just stored"))
    }
}

/// Companion rows `ā_n·`, `â_n·` (and the column difference) of row `n`.
pub fn companions(method: &TriangularMethod, n: usize) -> Result<CompanionRow> {
    let mut w = CompanionWalker::new(method, n)?;
    w.advance()?;
    Ok(w.current.take().expect("advanced once"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{make_weights, LazySequence, WeightSystem};

    #[test]
    fn identity_companions() {
        let m = TriangularMethod::identity();
        for n in 0..10 {
            let r = companions(&m, n).unwrap();
            assert!(r.bar.iter().all(|&x| x == 1.0));
            for v in 0..=n {
                assert_eq!(r.hat[v], if v == n { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn unit_mean_hat_closed_form() {
        let m = TriangularMethod::weighted_mean(&WeightSystem::unit());
        for n in 1..200usize {
            let r = companions(&m, n).unwrap();
            for v in 0..n {
                let oracle = (v + 1) as f64 / (n * (n + 1)) as f64;
                assert!((r.hat[v + 1] - oracle).abs() <= 2e-16 * oracle);
            }
            // 1 − 1 in double-double, up to its unit roundoff
            assert!(r.hat[0].abs() < 1e-30);
        }
    }

    #[test]
    fn walker_matches_independent_rows() {
        let w = make_weights(LazySequence::new(0, |n| 1.0 + (n % 5) as f64)).unwrap();
        let m = TriangularMethod::weighted_mean(&w);
        let mut walker = CompanionWalker::new(&m, 3).unwrap();
        for n in 3..40 {
            let a = walker.advance().unwrap().clone();
            assert_eq!(a, companions(&m, n).unwrap());
        }
    }

    #[test]
    fn first_row_conventions() {
        let m = TriangularMethod::from_rows(alloc::vec![alloc::vec![2.0], alloc::vec![0.5, 1.0]])
            .unwrap();
        let r0 = companions(&m, 0).unwrap();
        assert_eq!(r0.hat, alloc::vec![2.0]);
        assert_eq!(r0.bar, alloc::vec![2.0]);
        let r1 = companions(&m, 1).unwrap();
        assert_eq!(r1.bar, alloc::vec![1.5, 1.0]);
        assert_eq!(r1.hat, alloc::vec![-0.5, 1.0]);
        assert_eq!(r1.column_difference, alloc::vec![-1.5, 1.0]);
    }
}
