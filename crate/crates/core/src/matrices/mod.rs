//! Normal (lower-triangular, nonzero diagonal) summability methods.
//!
//! A method produces rows `a_n0, .., a_nn` on demand. Rows are evaluated in
//! double-double and rounded at the boundary; the companion rows `ā_n·`,
//! `â_n·` and the column difference `a_nv − a_{n−1,v}` are derived from the
//! double-double rows by [`CompanionWalker`], which keeps only the previous
//! row alive.

mod cesaro;
mod companions;
mod conditions;

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, Dd};
use crate::sequences::{LazySequence, WeightSystem};

pub use cesaro::{cesaro_coefficient, cesaro_means};
pub(crate) use cesaro::{CesaroTable, Coefficients};
pub use companions::{companions, CompanionRow, CompanionWalker};
pub use conditions::check_matrix_conditions;

/// Default row cap.
pub const DEFAULT_MAX_ROWS: usize = 20_000;

type Rule = Rc<dyn Fn(usize, usize) -> f64>;

#[derive(Clone)]
enum Kind {
    Identity,
    WeightedMean(WeightSystem),
    Cesaro(CesaroTable),
    Dense(Rc<Vec<Vec<f64>>>),
    Rule(Rule),
}

#[derive(Clone)]
pub struct TriangularMethod {
    kind: Kind,
    label: String,
    max_rows: usize,
    cache: Option<Rc<RefCell<Vec<Vec<Dd>>>>>,
}

impl fmt::Debug for TriangularMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriangularMethod")
            .field("label", &self.label)
            .field("max_rows", &self.max_rows)
            .finish()
    }
}

impl TriangularMethod {
    fn with_kind(kind: Kind, label: String) -> Self {
        Self {
            kind,
            label,
            max_rows: DEFAULT_MAX_ROWS,
            cache: None,
        }
    }

    pub fn identity() -> Self {
        Self::with_kind(Kind::Identity, "identity".to_string())
    }

    /// `a_nv = p_v / P_n`.
    pub fn weighted_mean(w: &WeightSystem) -> Self {
        Self::with_kind(Kind::WeightedMean(w.clone()), "weighted_mean".to_string())
    }

    /// `a_nv = A_{n−v}^{α−1} / A_n^α` for `0 < α <= 1`.
    pub fn cesaro(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                requirement: "0 < alpha <= 1",
            });
        }
        Ok(Self::cesaro_unchecked(alpha))
    }

    /// Cesàro matrix for any `α > −1`; it is normal but need not satisfy the
    /// monotonicity conditions.
    pub(crate) fn cesaro_unchecked(alpha: f64) -> Self {
        Self::with_kind(
            Kind::Cesaro(CesaroTable::new(alpha)),
            format!("cesaro({alpha})"),
        )
    }

    /// Dense lower-triangular rows; row `n` must have `n + 1` finite entries
    /// and a nonzero diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Shape {
                what: "matrix",
                detail: "no rows".to_string(),
            });
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::Shape {
                    what: "matrix",
                    detail: format!("row {n} has {} entries, expected {}", row.len(), n + 1),
                });
            }
            if let Some(v) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::Shape {
                    what: "matrix",
                    detail: format!("entry ({n}, {v}) is not finite"),
                });
            }
            if row[n] == 0.0 {
                return Err(Error::NotNormal { row: n, value: 0.0 });
            }
        }
        let limit = rows.len();
        let mut m = Self::with_kind(Kind::Dense(Rc::new(rows)), "dense".to_string());
        m.max_rows = limit;
        Ok(m)
    }

    /// Entries given by a rule `(n, v) -> a_nv`, queried only for `v <= n`.
    /// Normality is checked per row as rows are produced.
    pub fn from_rule(
        label: impl Into<String>,
        rule: impl Fn(usize, usize) -> f64 + 'static,
    ) -> Self {
        Self::with_kind(Kind::Rule(Rc::new(rule)), label.into())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Caps the number of rows (dense methods keep their own size as cap).
    pub fn with_max_rows(mut self, max_rows: usize) -> Self {
        if !matches!(self.kind, Kind::Dense(_)) {
            self.max_rows = max_rows;
        }
        self
    }

    /// Keeps every produced row instead of recomputing.
    pub fn with_full_cache(mut self) -> Self {
        self.cache = Some(Rc::new(RefCell::new(Vec::new())));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_rows(&self) -> usize {
        self.max_rows
    }

    pub fn is_weighted_mean(&self) -> bool {
        matches!(self.kind, Kind::WeightedMean(_))
    }

    pub(crate) fn row_dd(&self, n: usize) -> Result<Vec<Dd>> {
        if n >= self.max_rows {
            return Err(Error::RowLimit {
                requested: n,
                limit: self.max_rows,
            });
        }
        if let Some(cache) = &self.cache {
            if let Some(row) = cache.borrow().get(n) {
                return Ok(row.clone());
            }
            let start = cache.borrow().len();
            for m in start..=n {
                let row = self.compute_row(m)?;
                cache.borrow_mut().push(row);
            }
            return Ok(cache.borrow()[n].clone());
        }
        self.compute_row(n)
    }

    fn compute_row(&self, n: usize) -> Result<Vec<Dd>> {
        let row = match &self.kind {
            Kind::Identity => {
                let mut r = vec![Dd::ZERO; n + 1];
                r[n] = Dd::ONE;
                r
            }
            Kind::WeightedMean(w) => w.with_prefix(n, |p, big| {
                let inv = Dd::ONE / big[n];
                p.iter().map(|&x| inv * x).collect()
            })?,
            Kind::Cesaro(table) => table.row(n),
            Kind::Dense(rows) => rows[n].iter().map(|&x| Dd::new(x)).collect(),
            Kind::Rule(rule) => {
                let r: Vec<Dd> = (0..=n).map(|v| Dd::new(rule(n, v))).collect();
                if let Some(v) = r.iter().position(|x| !x.is_finite()) {
                    return Err(Error::Shape {
                        what: "matrix rule",
                        detail: format!("entry ({n}, {v}) is not finite"),
                    });
                }
                r
            }
        };
        let diag = row[n].to_f64();
        if diag == 0.0 || !diag.is_finite() {
            return Err(Error::NotNormal {
                row: n,
                value: diag,
            });
        }
        Ok(row)
    }

    /// Row `a_n0, .., a_nn`.
    pub fn row(&self, n: usize) -> Result<Vec<f64>> {
        Ok(self.row_dd(n)?.into_iter().map(Dd::to_f64).collect())
    }

    /// `a_nv`, zero above the diagonal.
    pub fn entry(&self, n: usize, v: usize) -> Result<f64> {
        if v > n {
            return Ok(0.0);
        }
        match &self.kind {
            Kind::Identity => Ok(if v == n { 1.0 } else { 0.0 }),
            Kind::Dense(rows) if n < rows.len() => Ok(rows[n][v]),
            Kind::Rule(rule) if v < n && n < self.max_rows => Ok(rule(n, v)),
            _ => Ok(self.row_dd(n)?[v].to_f64()),
        }
    }

    pub fn diagonal(&self, n: usize) -> Result<f64> {
        self.entry(n, n)
    }
}

/// `A_n(s) = Σ_{v≤n} a_nv s_v`, reading `s` as zero below its start.
pub fn transform(method: &TriangularMethod, s: &LazySequence, n: usize) -> Result<f64> {
    let row = method.row_dd(n)?;
    let mut acc = Dd::ZERO;
    for (v, a) in row.iter().enumerate() {
        acc += *a * s.term(v);
    }
    Ok(acc.to_f64())
}

/// `A_n(s) = Σ_{v≤n} ā_nv a_v`, the series-to-sequence form.
pub fn transform_series(method: &TriangularMethod, a: &LazySequence, n: usize) -> Result<f64> {
    let row = companions(method, n)?;
    let mut acc = CompensatedSum::new();
    for v in 0..=n {
        acc.add(row.bar[v] * a.term(v));
    }
    Ok(acc.value())
}

/// `Δ̄A_n(s) = Σ_{v≤n} â_nv a_v`; at `n = 0` this is `A_0(s)`.
pub fn delta_transform(method: &TriangularMethod, a: &LazySequence, n: usize) -> Result<f64> {
    let row = companions(method, n)?;
    Ok(row.apply_hat(0, |v| a.term(v)))
}

/// The `(N̄, p_n)` mean `t_n = (1/P_n) Σ_{v≤n} p_v s_v`.
pub fn riesz_mean(s: &LazySequence, w: &WeightSystem, n: usize) -> Result<f64> {
    let mut acc = Dd::ZERO;
    for v in 0..=n {
        acc += Dd::new(w.weight(v as i64)?) * s.term(v);
    }
    Ok((acc / w.total_dd(n as i64)?).to_f64())
}
