//! The Abel-transformed split of `Δ̄I_n = Σ_{v=1}^{n} â_nv a_v λ_v`, where
//! `I_n` is the `A`-transform of `Σ a_n λ_n`, into
//!
//! ```text
//! I_{n,1} = Σ_{v=1}^{n−1} (a_nv − a_{n−1,v}) λ_v t_v (v+1)/v
//! I_{n,2} = Σ_{v=1}^{n−1} â_{n,v+1} Δλ_v t_v (v+1)/v
//! I_{n,3} = Σ_{v=1}^{n−1} â_{n,v+1} λ_{v+1} t_v / v
//! I_{n,4} = a_nn λ_n t_n (n+1)/n
//! ```
//!
//! with `t` the `(C,1)` mean of `(n a_n)`. The boundary term of the Abel sum
//! is folded into `I_{n,4}` (`â_nn = a_nn`). Terms below a sequence's start
//! index read as zero; `a_0` never enters.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{check_k, Error, Result};
use crate::growth::{GrowthReport, Thresholds};
use crate::matrices::{CompanionRow, CompanionWalker, TriangularMethod};
use crate::numeric::{abs_pow, CompensatedSum};
use crate::sequences::{LazySequence, WeightSystem};
use crate::summability::{CesaroOneMean, SummabilityLedger};

/// Residual bound `|Δ̄I_n − Σ I_{n,r}| <= RESIDUAL_TOLERANCE · max(1, |Δ̄I_n|)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Absolute tolerance for `â_nv − â_{n,v+1} = a_nv − a_{n−1,v}`.
pub const IDENTITY_TOLERANCE: f64 = 1e-13;
/// Relative rounding allowance for the row and column inequalities.
pub const BOUND_TOLERANCE: f64 = 1e-12;
/// Relative rounding allowance for the termwise domination check.
pub const DOMINATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionRow {
    pub n: usize,
    pub delta_i: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub residual: f64,
}

impl DecompositionRow {
    pub fn parts(&self) -> [f64; 4] {
        [self.i1, self.i2, self.i3, self.i4]
    }

    pub fn within_tolerance(&self) -> bool {
        self.residual.abs() <= RESIDUAL_TOLERANCE * self.delta_i.abs().max(1.0)
    }
}

struct Inputs {
    a: Vec<f64>,
    lam: Vec<f64>,
    t: Vec<f64>,
}

impl Inputs {
    fn new(a: &LazySequence, lambda: &LazySequence, horizon: usize) -> Self {
        let t = CesaroOneMean::of(a);
        Self {
            a: (0..=horizon).map(|v| a.term(v)).collect(),
            lam: (0..=horizon + 1).map(|v| lambda.term(v)).collect(),
            t: (0..=horizon).map(|v| t.value(v)).collect(),
        }
    }

    fn row(&self, c: &CompanionRow) -> DecompositionRow {
        let n = c.n;
        let delta_i = c.apply_hat(1, |v| self.a[v] * self.lam[v]);
        let (mut i1, mut i2, mut i3) = (
            CompensatedSum::new(),
            CompensatedSum::new(),
            CompensatedSum::new(),
        );
        for v in 1..n {
            let vf = v as f64;
            let ratio = (vf + 1.0) / vf;
            let tv = self.t[v];
            let hat_next = c.hat[v + 1];
            i1.add(c.column_difference[v] * self.lam[v] * tv * ratio);
            i2.add(hat_next * (self.lam[v] - self.lam[v + 1]) * tv * ratio);
            i3.add(hat_next * self.lam[v + 1] * tv / vf);
        }
        let nf = n as f64;
        let i4 = c.entries[n] * self.lam[n] * self.t[n] * (nf + 1.0) / nf;
        let (i1, i2, i3) = (i1.value(), i2.value(), i3.value());
        let parts: CompensatedSum = [i1, i2, i3, i4].into_iter().collect();
        DecompositionRow {
            n,
            delta_i,
            i1,
            i2,
            i3,
            i4,
            residual: delta_i - parts.value(),
        }
    }
}

/// The split at a single `n >= 1`.
pub fn decompose(
    method: &TriangularMethod,
    a: &LazySequence,
    lambda: &LazySequence,
    n: usize,
) -> Result<DecompositionRow> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            requirement: "n >= 1",
        });
    }
    let inputs = Inputs::new(a, lambda, n);
    let mut walker = CompanionWalker::new(method, n)?;
    Ok(inputs.row(walker.advance()?))
}

/// Rows `n = 1..=N` of the split, in one pass over the method.
pub fn decomposition_table(
    method: &TriangularMethod,
    a: &LazySequence,
    lambda: &LazySequence,
    horizon: usize,
) -> Result<Vec<DecompositionRow>> {
    let inputs = Inputs::new(a, lambda, horizon);
    let mut walker = CompanionWalker::new(method, 1)?;
    let mut rows = Vec::with_capacity(horizon);
    for _ in 1..=horizon {
        rows.push(inputs.row(walker.advance()?));
    }
    Ok(rows)
}

/// Per-part ledgers `Σ (P_n/p_n)^{k−1}|I_{n,r}|^k`, the ledger of the whole
/// `Δ̄I_n`, and a termwise check of `|Σ_r x_r|^k <= 4^{k−1} Σ_r |x_r|^k`
/// (which implies the weaker `4^k` bound).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedSums {
    pub parts: [SummabilityLedger; 4],
    pub total: SummabilityLedger,
    pub domination: GrowthReport,
}

impl BoundedSums {
    pub fn reports(&self, thresholds: &Thresholds) -> [GrowthReport; 5] {
        [
            self.parts[0].report(thresholds),
            self.parts[1].report(thresholds),
            self.parts[2].report(thresholds),
            self.parts[3].report(thresholds),
            self.total.report(thresholds),
        ]
    }
}

pub fn bounded_sums_from_rows(
    rows: &[DecompositionRow],
    w: &WeightSystem,
    k: f64,
    tag: &str,
) -> Result<BoundedSums> {
    check_k(k)?;
    let horizon = rows.last().map_or(0, |r| r.n);
    let wp = w.prefix(horizon.max(1))?;
    let mut parts: [Vec<f64>; 4] = Default::default();
    let mut total = Vec::with_capacity(rows.len());
    let factor = 4f64.powf(k - 1.0);
    let (mut worst, mut at) = (0.0f64, rows.first().map_or(1, |r| r.n));
    for row in rows {
        let scale = abs_pow(wp.ratio(row.n), k - 1.0);
        let mut bound = 0.0;
        for (r, x) in row.parts().into_iter().enumerate() {
            let term = scale * abs_pow(x, k);
            parts[r].push(term);
            bound += term;
        }
        let whole = scale * abs_pow(row.delta_i, k);
        total.push(whole);
        let excess = if whole == 0.0 {
            0.0
        } else if bound == 0.0 {
            f64::INFINITY
        } else {
            whole / (factor * bound) - 1.0
        };
        if excess > worst {
            worst = excess;
            at = row.n;
        }
    }
    let first = rows.first().map_or(1, |r| r.n);
    let [p1, p2, p3, p4] = parts;
    let ledger = |r: usize, v: Vec<f64>| {
        SummabilityLedger::from_terms(alloc::format!("{tag}: I_n,{r}"), k, first, v)
    };
    Ok(BoundedSums {
        parts: [ledger(1, p1), ledger(2, p2), ledger(3, p3), ledger(4, p4)],
        total: SummabilityLedger::from_terms(alloc::format!("{tag}: dI_n"), k, first, total),
        domination: GrowthReport::exact(
            "|sum_r I_n,r|^k <= 4^(k-1) sum_r |I_n,r|^k",
            worst,
            at,
            DOMINATION_SLACK,
        ),
    })
}

pub fn bounded_sums(
    method: &TriangularMethod,
    a: &LazySequence,
    lambda: &LazySequence,
    w: &WeightSystem,
    k: f64,
    horizon: usize,
) -> Result<BoundedSums> {
    check_k(k)?;
    let rows = decomposition_table(method, a, lambda, horizon)?;
    bounded_sums_from_rows(&rows, w, k, method.label())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDifferenceChecks {
    /// Worst `|(â_nv − â_{n,v+1}) − (a_nv − a_{n−1,v})|` over `v <= n <= N`.
    pub identity: GrowthReport,
    /// `Σ_{v=1}^{n−1} |a_nv − a_{n−1,v}| <= a_nn`, worst relative excess.
    pub row_bound: GrowthReport,
    /// `Σ_{n=v+1}^{N} |a_nv − a_{n−1,v}| <= a_vv`, worst relative excess.
    pub column_bound: GrowthReport,
    /// `min_n (a_nn − Σ_{v=1}^{n−1} |a_nv − a_{n−1,v}|)`.
    pub min_row_slack: f64,
    pub min_column_slack: f64,
    /// `Σ_{n=v+1}^{N} â_{n,v+1}` for `v = 0..N−1`, logged for inspection.
    pub hat_column_sums: Vec<f64>,
}

pub fn column_difference_checks(
    method: &TriangularMethod,
    horizon: usize,
) -> Result<ColumnDifferenceChecks> {
    if horizon < 2 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: horizon as f64,
            requirement: "N >= 2",
        });
    }
    let mut walker = CompanionWalker::new(method, 0)?;
    let mut diag = Vec::with_capacity(horizon + 1);
    let mut col_sum = alloc::vec![CompensatedSum::new(); horizon + 1];
    let mut hat_cols = alloc::vec![CompensatedSum::new(); horizon];
    let (mut id_worst, mut id_at) = (0.0f64, 0);
    let (mut row_worst, mut row_at) = (0.0f64, 1);
    let mut min_row_slack = f64::INFINITY;
    for n in 0..=horizon {
        let row = walker.advance()?;
        diag.push(row.entries[n]);
        if n == 0 {
            continue;
        }
        for v in 0..=n {
            let lhs = row.hat[v] - row.hat_at(v + 1);
            let err = (lhs - row.column_difference[v]).abs();
            if err > id_worst || err.is_nan() {
                id_worst = if err.is_nan() { f64::INFINITY } else { err };
                id_at = n;
            }
        }
        for v in 1..=n {
            hat_cols[v - 1].add(row.hat[v]);
        }
        let mut s = CompensatedSum::new();
        for (v, (d, col)) in row.column_difference[..n]
            .iter()
            .zip(&mut col_sum)
            .enumerate()
        {
            let d = d.abs();
            col.add(d);
            if v >= 1 {
                s.add(d);
            }
        }
        let ann = row.entries[n];
        let slack = ann - s.value();
        min_row_slack = min_row_slack.min(slack);
        let excess = -slack / ann.abs();
        if excess > row_worst {
            row_worst = excess;
            row_at = n;
        }
    }
    let (mut col_worst, mut col_at) = (0.0f64, 1);
    let mut min_column_slack = f64::INFINITY;
    for v in 1..horizon {
        let slack = diag[v] - col_sum[v].value();
        min_column_slack = min_column_slack.min(slack);
        let excess = -slack / diag[v].abs();
        if excess > col_worst {
            col_worst = excess;
            col_at = v;
        }
    }
    Ok(ColumnDifferenceChecks {
        identity: GrowthReport::exact(
            "hat a_nv - hat a_n(v+1) = a_nv - a_(n-1)v",
            id_worst,
            id_at,
            IDENTITY_TOLERANCE,
        ),
        row_bound: GrowthReport::exact(
            "sum_(v=1)^(n-1) |a_nv - a_(n-1)v| <= a_nn",
            row_worst,
            row_at,
            BOUND_TOLERANCE,
        ),
        column_bound: GrowthReport::exact(
            "sum_(n>v) |a_nv - a_(n-1)v| <= a_vv",
            col_worst,
            col_at,
            BOUND_TOLERANCE,
        ),
        min_row_slack,
        min_column_slack,
        hat_column_sums: hat_cols.iter().map(|c| c.value()).collect(),
    })
}
