use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::growth::{GrowthReport, Thresholds};
use crate::numeric::{rel_diff, CompensatedSum};

/// Per-`n` terms of an index and their running sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityLedger {
    pub method_tag: String,
    pub k: f64,
    /// Index of `terms[0]`.
    pub first_index: usize,
    pub terms: Vec<f64>,
    pub partials: Vec<f64>,
    /// The same terms by a second formula, where the index has one.
    pub alternate_terms: Option<Vec<f64>>,
}

impl SummabilityLedger {
    pub fn from_terms(
        method_tag: impl Into<String>,
        k: f64,
        first_index: usize,
        terms: Vec<f64>,
    ) -> Self {
        let mut acc = CompensatedSum::new();
        let partials = terms
            .iter()
            .map(|&t| {
                acc.add(t);
                acc.value()
            })
            .collect();
        Self {
            method_tag: method_tag.into(),
            k,
            first_index,
            terms,
            partials,
            alternate_terms: None,
        }
    }

    pub fn with_alternate(mut self, alternate: Vec<f64>) -> Self {
        debug_assert_eq!(alternate.len(), self.terms.len());
        self.alternate_terms = Some(alternate);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Last index covered.
    pub fn horizon(&self) -> usize {
        self.first_index + self.terms.len().saturating_sub(1)
    }

    pub fn term(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.first_index)
            .and_then(|i| self.terms.get(i).copied())
    }

    pub fn partial(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.first_index)
            .and_then(|i| self.partials.get(i).copied())
    }

    pub fn total(&self) -> f64 {
        self.partials.last().copied().unwrap_or(0.0)
    }

    /// `(n, term, partial_sum)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.terms
            .iter()
            .zip(&self.partials)
            .enumerate()
            .map(move |(i, (&t, &p))| (self.first_index + i, t, p))
    }

    /// Grades the partial sums as a boundedness claim.
    pub fn report(&self, thresholds: &Thresholds) -> GrowthReport {
        GrowthReport::from_history(
            format!("{} (k = {}): partial sums bounded", self.method_tag, self.k),
            self.first_index,
            &self.partials,
            thresholds,
        )
    }

    /// Largest relative deviation between primary and alternate terms and
    /// where it occurs.
    pub fn alternate_deviation(&self) -> Option<(f64, usize)> {
        let alt = self.alternate_terms.as_ref()?;
        let mut worst = (0.0, self.first_index);
        for (i, (&a, &b)) in self.terms.iter().zip(alt).enumerate() {
            let d = rel_diff(a, b);
            if d > worst.0 || d.is_nan() {
                worst = (d, self.first_index + i);
            }
        }
        Some(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn partials_accumulate() {
        let l = SummabilityLedger::from_terms("x", 1.0, 1, vec![1.0, 0.5, 0.25]);
        assert_eq!(l.partials, vec![1.0, 1.5, 1.75]);
        assert_eq!(l.horizon(), 3);
        assert_eq!(l.term(2), Some(0.5));
        assert_eq!(l.partial(0), None);
        assert_eq!(l.total(), 1.75);
    }

    #[test]
    fn alternate_deviation_locates_worst() {
        let l = SummabilityLedger::from_terms("x", 1.0, 1, vec![1.0, 2.0, 0.0])
            .with_alternate(vec![1.0, 2.2, 0.0]);
        let (d, at) = l.alternate_deviation().unwrap();
        assert!((d - 0.2 / 2.2).abs() < 1e-15);
        assert_eq!(at, 2);
    }
}
