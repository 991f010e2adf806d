//! Fourier series experiments: coefficients of a `2π`-periodic `f`, the
//! sequence `C_n(x) = a_n cos nx + b_n sin nx`, the means `t_n(x)` of
//! `(n C_n(x))`, the symmetrized `φ(t) = ½{f(x+t) + f(x−t)}` with its
//! fractional integral means `φ_α`, and a bounded-variation diagnostic.
//!
//! The constant term is dropped throughout: `C_0 = 0` and `φ` is built from
//! `f − a_0/2`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::growth::{GrowthReport, Thresholds, Verdict};
use crate::matrices::TriangularMethod;
use crate::numeric::CompensatedSum;
use crate::quadrature::{integrate, nodes};
use crate::sequences::{LazySequence, WeightSystem};
use crate::summability::{
    check_hypotheses, factored_series, index_matrix, CesaroOneMean, FactorScenario,
    HypothesisLedger, SummabilityLedger, Variant,
};

const TWO_PI: f64 = 2.0 * PI;

/// Absolute tolerance on `a_n`, `b_n` unless one is given.
pub const DEFAULT_COEFFICIENT_TOLERANCE: f64 = 1e-10;
/// Absolute tolerance for the `φ_α` integrals.
pub const PHI_ALPHA_TOLERANCE: f64 = 1e-12;
/// Relative change between the two finest grids below which a variation
/// sequence counts as stabilized.
pub const BV_STABILITY: f64 = 1e-3;
/// Dyadic grids used by the experiment.
pub const DEFAULT_BV_GRIDS: [usize; 6] = [128, 256, 512, 1024, 2048, 4096];

/// Largest `ω h` allowed on a coefficient panel of half-width `h`.
const MAX_PHASE_PER_PANEL: f64 = 3.0;
/// Panels per piece are capped at `2^MAX_LEVEL`.
const MAX_LEVEL: u32 = 18;
/// Panel phases are recomputed directly this often.
const RESYNC: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Piecewise,
    BvOnly,
}

impl Smoothness {
    pub fn as_str(self) -> &'static str {
        match self {
            Smoothness::Smooth => "smooth",
            Smoothness::Piecewise => "piecewise",
            Smoothness::BvOnly => "bv-only",
        }
    }
}

/// A `2π`-periodic function given by its values on `[−π, π)`.
#[derive(Clone)]
pub struct PeriodicFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    breakpoints: Vec<f64>,
    hint: Smoothness,
    label: String,
}

impl fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("label", &self.label)
            .field("hint", &self.hint)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

/// `t` reduced to `[−π, π)`.
pub fn reduce(t: f64) -> f64 {
    let r = t - TWO_PI * ((t + PI) / TWO_PI).floor();
    if r >= PI {
        r - TWO_PI
    } else {
        r
    }
}

impl PeriodicFunction {
    /// `rule` is only called on `[−π, π)`.
    pub fn new(
        label: impl Into<String>,
        hint: Smoothness,
        rule: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(rule),
            breakpoints: Vec::new(),
            hint,
            label: label.into(),
        }
    }

    /// Registers points where `f` or a derivative jumps. They are reduced to
    /// `[−π, π)`; `−π` itself is always a panel edge.
    pub fn with_breakpoints(mut self, points: &[f64]) -> Self {
        let mut b: Vec<f64> = points
            .iter()
            .map(|&p| reduce(p))
            .filter(|&p| p > -PI)
            .collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        self.breakpoints = b;
        self
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(reduce(t))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn hint(&self) -> Smoothness {
        self.hint
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `f(t) = t` on `(−π, π)`.
    pub fn sawtooth() -> Self {
        Self::new("sawtooth", Smoothness::Piecewise, |t| t)
    }

    /// `sign t`.
    pub fn square() -> Self {
        Self::new("square", Smoothness::Piecewise, |t| {
            if t > 0.0 {
                1.0
            } else if t < 0.0 {
                -1.0
            } else {
                0.0
            }
        })
        .with_breakpoints(&[0.0])
    }

    /// `|t|`.
    pub fn triangle() -> Self {
        Self::new("triangle", Smoothness::Piecewise, f64::abs).with_breakpoints(&[0.0])
    }

    pub fn sine(m: u32) -> Self {
        Self::new(alloc::format!("sin({m}t)"), Smoothness::Smooth, move |t| {
            (m as f64 * t).sin()
        })
    }

    pub fn cosine(m: u32) -> Self {
        Self::new(alloc::format!("cos({m}t)"), Smoothness::Smooth, move |t| {
            (m as f64 * t).cos()
        })
    }

    /// Periodic linear interpolation of samples at `−π + 2πj/M`.
    pub fn sampled(label: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        let m = samples.len();
        if m < 2 {
            return Err(Error::Shape {
                what: "sample table",
                detail: alloc::format!("{m} samples, need at least 2"),
            });
        }
        if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::Shape {
                what: "sample table",
                detail: alloc::format!("sample {j} is not finite"),
            });
        }
        let step = TWO_PI / m as f64;
        let knots: Vec<f64> = (0..m).map(|j| -PI + step * j as f64).collect();
        let s = samples;
        Ok(Self::new(label, Smoothness::BvOnly, move |t| {
            let u = (t + PI) / step;
            let j = (u.floor() as usize).min(m - 1);
            let frac = u - j as f64;
            s[j] + (s[(j + 1) % m] - s[j]) * frac
        })
        .with_breakpoints(&knots))
    }

    /// Periodic linear interpolation of `(t, f(t))` pairs; the knots are
    /// reduced into `[−π, π)` and must be distinct.
    pub fn sampled_pairs(label: impl Into<String>, pairs: Vec<(f64, f64)>) -> Result<Self> {
        let m = pairs.len();
        if m < 2 {
            return Err(Error::Shape {
                what: "sample table",
                detail: alloc::format!("{m} samples, need at least 2"),
            });
        }
        if let Some(j) = pairs
            .iter()
            .position(|(t, v)| !t.is_finite() || !v.is_finite())
        {
            return Err(Error::Shape {
                what: "sample table",
                detail: alloc::format!("sample {j} is not finite"),
            });
        }
        let mut pts: Vec<(f64, f64)> = pairs.into_iter().map(|(t, v)| (reduce(t), v)).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(j) = pts.windows(2).position(|w| w[0].0 == w[1].0) {
            return Err(Error::Shape {
                what: "sample table",
                detail: alloc::format!("repeated knot t = {}", pts[j].0),
            });
        }
        let knots: Vec<f64> = pts.iter().map(|p| p.0).collect();
        Ok(Self::new(label, Smoothness::BvOnly, move |t| {
            let t = reduce(t);
            let i = pts.partition_point(|p| p.0 <= t);
            let (lo, hi) = match i {
                0 => ((pts[m - 1].0 - TWO_PI, pts[m - 1].1), pts[0]),
                i if i == m => (pts[m - 1], (pts[0].0 + TWO_PI, pts[0].1)),
                i => (pts[i - 1], pts[i]),
            };
            lo.1 + (hi.1 - lo.1) * (t - lo.0) / (hi.0 - lo.0)
        })
        .with_breakpoints(&knots))
    }
}

/// Per-level cache of `f` at the 21 Kronrod nodes of every panel.
struct Piece {
    lo: f64,
    hi: f64,
    levels: Vec<Option<Vec<f64>>>,
}

struct CoefficientEngine {
    f: PeriodicFunction,
    pieces: RefCell<Vec<Piece>>,
    tol: f64,
}

#[derive(Clone, Copy)]
struct Cx {
    re: f64,
    im: f64,
}

impl Cx {
    fn cis(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: c, im: s }
    }

    fn mul(self, o: Cx) -> Cx {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl CoefficientEngine {
    fn new(f: PeriodicFunction, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tol",
                value: tol,
                requirement: "tol > 0",
            });
        }
        let mut edges = vec![-PI];
        edges.extend_from_slice(f.breakpoints());
        edges.push(PI);
        let pieces = edges
            .windows(2)
            .map(|e| Piece {
                lo: e[0],
                hi: e[1],
                levels: Vec::new(),
            })
            .collect();
        Ok(Self {
            f,
            pieces: RefCell::new(pieces),
            tol,
        })
    }

    fn base_level(n: usize, width: f64) -> u32 {
        let need = (n as f64 * width / (2.0 * MAX_PHASE_PER_PANEL))
            .ceil()
            .max(1.0) as u64;
        need.next_power_of_two().trailing_zeros()
    }

    fn ensure_level(&self, piece: &mut Piece, level: u32) {
        let l = level as usize;
        if piece.levels.len() <= l {
            piece.levels.resize_with(l + 1, || None);
        }
        if piece.levels[l].is_some() {
            return;
        }
        let panels = 1usize << level;
        let h = (piece.hi - piece.lo) / (2 * panels) as f64;
        let nd = nodes();
        let mut values = Vec::with_capacity(panels * 21);
        for p in 0..panels {
            let c = piece.lo + h * (2 * p + 1) as f64;
            values.extend(nd.iter().map(|&(x, _, _)| (self.f.eval)(c + h * x)));
        }
        piece.levels[l] = Some(values);
    }

    /// `∫ f e^{int}` over one piece at one level, with `Σ |K − G| h`.
    fn piece_integral(&self, piece: &Piece, level: u32, n: usize) -> (f64, f64, f64) {
        let values = piece.levels[level as usize].as_ref().expect("level cached");
        let panels = 1usize << level;
        let h = (piece.hi - piece.lo) / (2 * panels) as f64;
        let nf = n as f64;
        let nd = nodes();
        let e: [Cx; 21] = core::array::from_fn(|j| Cx::cis(nf * h * nd[j].0));
        let step = Cx::cis(2.0 * nf * h);
        let (mut re, mut im, mut err) = (CompensatedSum::new(), CompensatedSum::new(), 0.0);
        let mut q = Cx { re: 1.0, im: 0.0 };
        for p in 0..panels {
            if p % RESYNC == 0 {
                q = Cx::cis(nf * (piece.lo + h * (2 * p + 1) as f64));
            } else {
                q = q.mul(step);
            }
            let fv = &values[21 * p..21 * p + 21];
            let (mut kr, mut ki, mut gr, mut gi) = (0.0, 0.0, 0.0, 0.0);
            for j in 0..21 {
                let (_, wk, wg) = nd[j];
                let fr = fv[j] * e[j].re;
                let fi = fv[j] * e[j].im;
                kr += wk * fr;
                ki += wk * fi;
                gr += wg * fr;
                gi += wg * fi;
            }
            let k = q.mul(Cx { re: kr, im: ki });
            re.add(k.re * h);
            im.add(k.im * h);
            err += ((kr - gr).hypot(ki - gi)) * h;
        }
        (re.value(), im.value(), err)
    }

    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        let mut pieces = self.pieces.borrow_mut();
        let mut bump = 0u32;
        loop {
            let (mut re, mut im, mut err) = (CompensatedSum::new(), CompensatedSum::new(), 0.0);
            for piece in pieces.iter_mut() {
                let level = Self::base_level(n, piece.hi - piece.lo) + bump;
                if level > MAX_LEVEL {
                    return Err(Error::Accuracy {
                        quantity: "fourier coefficient",
                        estimate: f64::INFINITY,
                        tolerance: self.tol,
                    });
                }
                self.ensure_level(piece, level);
                let (r, i, e) = self.piece_integral(piece, level, n);
                re.add(r);
                im.add(i);
                err += e;
            }
            let err = err / PI;
            let (a, b) = (re.value() / PI, if n == 0 { 0.0 } else { im.value() / PI });
            if err <= self.tol && a.is_finite() && b.is_finite() {
                return Ok((a, b));
            }
            let capped = pieces
                .iter()
                .any(|p| Self::base_level(n, p.hi - p.lo) + bump >= MAX_LEVEL);
            if capped {
                return Err(Error::Accuracy {
                    quantity: "fourier coefficient",
                    estimate: err,
                    tolerance: self.tol,
                });
            }
            bump += 1;
        }
    }
}

/// `(a_n, b_n)` to the default absolute tolerance.
pub fn fourier_coefficients(f: &PeriodicFunction, n: usize) -> Result<(f64, f64)> {
    fourier_coefficients_with(f, n, DEFAULT_COEFFICIENT_TOLERANCE)
}

pub fn fourier_coefficients_with(f: &PeriodicFunction, n: usize, tol: f64) -> Result<(f64, f64)> {
    CoefficientEngine::new(f.clone(), tol)?.coefficients(n)
}

/// Coefficients of `f` memoized for one evaluation point `x`.
pub struct FourierState {
    pub x: f64,
    engine: CoefficientEngine,
    coeffs: Vec<(f64, f64)>,
}

impl fmt::Debug for FourierState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierState")
            .field("x", &self.x)
            .field("function", &self.engine.f)
            .field("filled", &self.filled())
            .finish()
    }
}

impl FourierState {
    pub fn new(f: &PeriodicFunction, x: f64) -> Result<Self> {
        Self::with_tolerance(f, x, DEFAULT_COEFFICIENT_TOLERANCE)
    }

    pub fn with_tolerance(f: &PeriodicFunction, x: f64, tol: f64) -> Result<Self> {
        if !(-PI..=PI).contains(&x) {
            return Err(Error::InvalidParameter {
                name: "x",
                value: x,
                requirement: "-pi <= x <= pi",
            });
        }
        Ok(Self {
            x,
            engine: CoefficientEngine::new(f.clone(), tol)?,
            coeffs: Vec::new(),
        })
    }

    pub fn function(&self) -> &PeriodicFunction {
        &self.engine.f
    }

    /// Last `n` whose coefficients are known, if any.
    pub fn filled(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Computes coefficients through `n`.
    pub fn fill(&mut self, n: usize) -> Result<()> {
        for m in self.coeffs.len()..=n {
            let c = self.engine.coefficients(m)?;
            self.coeffs.push(c);
        }
        Ok(())
    }

    /// `(a_m, b_m)` for `m = 0..=filled`.
    pub fn coefficients(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// `C_n(x)`, with `C_0 = 0`. Panics past [`filled`](Self::filled).
    pub fn c(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let (a, b) = self.coeffs[n];
        let nx = n as f64 * self.x;
        a * nx.cos() + b * nx.sin()
    }

    /// `C_0(x), C_1(x), …` through the filled horizon, as a table.
    pub fn c_sequence(&self) -> LazySequence {
        let len = self.coeffs.len();
        LazySequence::from_table(0, (0..len).map(|n| self.c(n)).collect())
    }

    /// `t_n(x) = (1/(n+1)) Σ_{v=1}^{n} v C_v(x)`.
    pub fn t_of_x(&self) -> CesaroOneMean {
        CesaroOneMean::of(&self.c_sequence())
    }

    pub fn t_n_of_x(&self, n: usize) -> f64 {
        self.t_of_x().value(n)
    }
}

/// `φ(t) = ½{f(x+t) + f(x−t)} − a_0/2`.
#[derive(Debug, Clone)]
pub struct Phi {
    f: PeriodicFunction,
    x: f64,
    shift: f64,
}

impl Phi {
    pub fn eval(&self, t: f64) -> f64 {
        0.5 * (self.f.eval(self.x + t) + self.f.eval(self.x - t)) - self.shift
    }

    /// `a_0/2`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Points of `(lo, hi)` where `x ± t` meets a breakpoint of `f`.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut edges = vec![-PI];
        edges.extend_from_slice(self.f.breakpoints());
        for &b in &edges {
            for base in [b - self.x, self.x - b] {
                let first = ((lo - base) / TWO_PI).floor() as i64;
                let mut j = first;
                loop {
                    let t = base + TWO_PI * j as f64;
                    if t >= hi {
                        break;
                    }
                    if t > lo {
                        out.push(t);
                    }
                    j += 1;
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

pub fn phi(f: &PeriodicFunction, x: f64) -> Result<Phi> {
    let (a0, _) = fourier_coefficients(f, 0)?;
    Ok(Phi {
        f: f.clone(),
        x,
        shift: 0.5 * a0,
    })
}

/// `φ_α(t) = (α/t^α) ∫_0^t (t−u)^{α−1} φ(u) du`.
#[derive(Debug, Clone)]
pub struct PhiAlpha {
    phi: Phi,
    alpha: f64,
}

impl PhiAlpha {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self) -> &Phi {
        &self.phi
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= PI) {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                requirement: "0 < t <= pi",
            });
        }
        let bps = self.phi.breakpoints_in(0.0, t);
        if self.alpha == 1.0 {
            let e = integrate(
                &mut |u| self.phi.eval(u),
                0.0,
                t,
                &bps,
                PHI_ALPHA_TOLERANCE * t,
            )?;
            return Ok(e.value / t);
        }
        // u = t(1 − w^{1/α}) takes the kernel to dw on [0, 1]
        let inv = 1.0 / self.alpha;
        let wb: Vec<f64> = bps
            .iter()
            .map(|&b| (1.0 - b / t).powf(self.alpha))
            .collect();
        let e = integrate(
            &mut |w: f64| self.phi.eval(t * (1.0 - w.powf(inv))),
            0.0,
            1.0,
            &wb,
            PHI_ALPHA_TOLERANCE,
        )?;
        Ok(e.value)
    }

    /// `φ_α(πi/m)` for `i = 1..=m`.
    pub fn on_grid(&self, m: usize) -> Result<Vec<f64>> {
        let h = PI / m as f64;
        if self.alpha != 1.0 {
            return (1..=m).map(|i| self.eval(h * i as f64)).collect();
        }
        let mut acc = CompensatedSum::new();
        let mut out = Vec::with_capacity(m);
        for i in 1..=m {
            let (lo, hi) = (h * (i - 1) as f64, h * i as f64);
            let bps = self.phi.breakpoints_in(lo, hi);
            acc.add(
                integrate(
                    &mut |u| self.phi.eval(u),
                    lo,
                    hi,
                    &bps,
                    PHI_ALPHA_TOLERANCE * h,
                )?
                .value,
            );
            out.push(acc.value() / hi);
        }
        Ok(out)
    }
}

pub fn phi_alpha(f: &PeriodicFunction, x: f64, alpha: f64) -> Result<PhiAlpha> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            requirement: "alpha > 0",
        });
    }
    Ok(PhiAlpha {
        phi: phi(f, x)?,
        alpha,
    })
}

pub fn total_variation(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .collect::<CompensatedSum>()
        .value()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BvDiagnostic {
    /// `(M, V_M)`: variation over the grid `πi/M`, `i = 1..=M`.
    pub levels: Vec<(usize, f64)>,
    pub report: GrowthReport,
}

/// Total variation of `g` on `(0, π]` over increasing grids `πi/M`.
///
/// Stabilized (relative change at most [`BV_STABILITY`] between the two
/// finest grids) grades as bounded; otherwise the slope of `log V` against
/// `log M` is graded. When every grid size divides the largest, `g` is only
/// evaluated on the finest grid.
pub fn bv_diagnostic(
    mut g: impl FnMut(f64) -> f64,
    grids: &[usize],
    thresholds: &Thresholds,
) -> Result<BvDiagnostic> {
    bv_diagnostic_fallible(|t| Ok(g(t)), grids, thresholds)
}

pub fn bv_diagnostic_fallible(
    mut g: impl FnMut(f64) -> Result<f64>,
    grids: &[usize],
    thresholds: &Thresholds,
) -> Result<BvDiagnostic> {
    if grids.len() < 2 || grids[0] == 0 || grids.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter {
            name: "grids",
            value: grids.len() as f64,
            requirement: "at least two increasing positive grid sizes",
        });
    }
    let finest = *grids.last().expect("nonempty");
    let nested = grids.iter().all(|&m| finest.is_multiple_of(m));
    let fine: Vec<f64> = if nested {
        let h = PI / finest as f64;
        (1..=finest)
            .map(|i| g(h * i as f64))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let mut levels = Vec::with_capacity(grids.len());
    for &m in grids {
        let values: Vec<f64> = if nested {
            let stride = finest / m;
            (1..=m).map(|i| fine[i * stride - 1]).collect()
        } else {
            let h = PI / m as f64;
            (1..=m).map(|i| g(h * i as f64)).collect::<Result<_>>()?
        };
        levels.push((m, total_variation(&values)));
    }
    Ok(BvDiagnostic {
        report: grade_variation(&levels, thresholds),
        levels,
    })
}

fn grade_variation(levels: &[(usize, f64)], thresholds: &Thresholds) -> GrowthReport {
    let (mut sup, mut at) = (f64::NEG_INFINITY, levels[0].0);
    for &(m, v) in levels {
        if v > sup {
            sup = v;
            at = m;
        }
    }
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .filter(|l| l.1 > 0.0)
        .map(|&(m, v)| ((m as f64).ln(), v.ln()))
        .collect();
    let slope = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let (prev, last) = (levels[levels.len() - 2].1, levels[levels.len() - 1].1);
    let change = (last - prev).abs() / last.abs().max(prev.abs()).max(f64::MIN_POSITIVE);
    let verdict = if !sup.is_finite() {
        Verdict::Diverging
    } else if change <= BV_STABILITY || last == prev {
        Verdict::ConsistentWithBounded
    } else if slope > thresholds.diverging_above {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    };
    GrowthReport {
        claim: String::from("total variation on (0, pi] finite"),
        sup_ratio: sup,
        argmax_index: at,
        tail_slope: slope,
        verdict,
    }
}

/// Inputs of a factor experiment on `Σ C_n(x) λ_n`.
#[derive(Debug, Clone)]
pub struct FourierExperiment {
    pub function: PeriodicFunction,
    pub x: f64,
    pub factor: LazySequence,
    pub majorant: LazySequence,
    pub weights: WeightSystem,
    pub method: TriangularMethod,
    pub k: f64,
    pub variant: Variant,
    pub horizon: usize,
    pub tolerance: f64,
    pub bv_grids: Vec<usize>,
}

impl FourierExperiment {
    pub fn new(
        function: PeriodicFunction,
        x: f64,
        factor: LazySequence,
        majorant: LazySequence,
        weights: WeightSystem,
        method: TriangularMethod,
    ) -> Self {
        Self {
            function,
            x,
            factor,
            majorant,
            weights,
            method,
            k: 1.0,
            variant: Variant::AlmostIncreasing,
            horizon: 1000,
            tolerance: DEFAULT_COEFFICIENT_TOLERANCE,
            bv_grids: DEFAULT_BV_GRIDS.to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FourierOutcome {
    pub hypotheses: HypothesisLedger,
    pub index: SummabilityLedger,
    /// The theorem hypothesis, on `φ_1`.
    pub bv_phi1: BvDiagnostic,
    /// The hypothesis of the boundedness fact for `t_n(x)`, on `φ`.
    pub bv_phi: BvDiagnostic,
    /// Running `sup_{v<=n} |t_v(x)|`, `n = 1..=N`.
    pub t_sup: GrowthReport,
    pub coefficients: Vec<(f64, f64)>,
    pub c: Vec<f64>,
    pub t: Vec<f64>,
}

/// Hypotheses with `a = C(x)`, both BV checks, then the `|A,p_n|_k` ledger of
/// `Σ C_n(x) λ_n`.
pub fn fourier_summability_experiment(
    spec: &FourierExperiment,
    thresholds: &Thresholds,
) -> Result<FourierOutcome> {
    let n = spec.horizon;
    let mut state = FourierState::with_tolerance(&spec.function, spec.x, spec.tolerance)?;
    state.fill(n)?;
    let c = state.c_sequence();
    let scenario = FactorScenario {
        series: c.clone(),
        factor: spec.factor.clone(),
        majorant: spec.majorant.clone(),
        weights: spec.weights.clone(),
        k: spec.k,
    };
    let hypotheses = check_hypotheses(&scenario, spec.variant, n, thresholds)?;

    let p1 = phi_alpha(&spec.function, spec.x, 1.0)?;
    let finest = *spec.bv_grids.last().unwrap_or(&0);
    let grid = p1.on_grid(finest.max(1))?;
    let bv_phi1 = if spec
        .bv_grids
        .iter()
        .all(|&m| m > 0 && finest.is_multiple_of(m))
    {
        let h = PI / finest as f64;
        bv_diagnostic(
            |t| grid[((t / h).round() as usize).clamp(1, finest) - 1],
            &spec.bv_grids,
            thresholds,
        )?
    } else {
        bv_diagnostic_fallible(|t| p1.eval(t), &spec.bv_grids, thresholds)?
    };
    let bv_phi = bv_diagnostic(|t| p1.phi().eval(t), &spec.bv_grids, thresholds)?;

    let t = state.t_of_x();
    let mut sup = 0.0f64;
    let t_vals: Vec<f64> = (0..=n).map(|v| t.value(v)).collect();
    let history: Vec<f64> = t_vals[1..]
        .iter()
        .map(|v| {
            sup = sup.max(v.abs());
            sup
        })
        .collect();
    let t_sup = GrowthReport::from_history("sup_(v<=n) |t_v(x)| = O(1)", 1, &history, thresholds);

    let index = index_matrix(
        &factored_series(&c, &spec.factor),
        &spec.method,
        &spec.weights,
        spec.k,
        n,
    )?;
    Ok(FourierOutcome {
        hypotheses,
        index,
        bv_phi1,
        bv_phi,
        t_sup,
        coefficients: state.coefficients().to_vec(),
        c: (0..=n).map(|v| state.c(v)).collect(),
        t: t_vals,
    })
}
