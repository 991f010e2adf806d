//! 21-point Gauss–Kronrod rule and a globally adaptive integrator with
//! registered breakpoints.

// the tables are quoted at full published precision
#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Kronrod abscissae on `[0, 1]`, largest first; odd positions are the
/// 10-point Gauss nodes.
pub(crate) const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

pub(crate) const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_996_077_962_500,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for `XGK[1], XGK[3], .., XGK[9]`.
pub(crate) const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// The 21 nodes on `[-1, 1]` in ascending order together with Kronrod and
/// Gauss weights (Gauss weight 0 at Kronrod-only nodes).
pub(crate) fn nodes() -> [(f64, f64, f64); 21] {
    let mut out = [(0.0, 0.0, 0.0); 21];
    for j in 0..11 {
        let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        out[j] = (-XGK[j], WGK[j], wg);
        out[20 - j] = (XGK[j], WGK[j], wg);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// `|K21 − G10|` summed over panels; conservative for smooth integrands.
    pub error: f64,
}

/// One application of the 21-point Kronrod rule on `[a, b]`.
pub fn gk21<F: FnMut(f64) -> f64 + ?Sized>(f: &mut F, a: f64, b: f64) -> Estimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[10] * fc;
    let mut g = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Estimate {
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

/// Panel budget for [`integrate`].
pub const MAX_PANELS: usize = 4000;

/// Globally adaptive bisection of `∫_a^b f`, splitting first at the
/// `breakpoints` that fall strictly inside `(a, b)`.
///
/// Stops when the summed error estimate is at most
/// `max(tol, 50 ε |value|)`; fails with an accuracy error otherwise.
pub fn integrate<F: FnMut(f64) -> f64 + ?Sized>(
    f: &mut F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > lo && p < hi)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("breakpoints are finite"));
    cuts.dedup();

    let mut panels: Vec<(f64, f64, Estimate)> = Vec::new();
    let mut left = lo;
    for &p in cuts.iter().chain(core::iter::once(&hi)) {
        panels.push((left, p, gk21(f, left, p)));
        left = p;
    }
    loop {
        let value: f64 = crate::numeric::sum(panels.iter().map(|p| p.2.value));
        let error: f64 = panels.iter().map(|p| p.2.error).sum();
        if value.is_finite() && error <= tol.max(50.0 * f64::EPSILON * value.abs()) {
            return Ok(Estimate {
                value: sign * value,
                error,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| {
                x.1 .2
                    .error
                    .partial_cmp(&y.1 .2.error)
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .expect("at least one panel");
        let (l, r, _) = panels[worst];
        let m = 0.5 * (l + r);
        if panels.len() >= MAX_PANELS || !(m > l && m < r) || !error.is_finite() {
            return Err(Error::Accuracy {
                quantity: "integral",
                estimate: error,
                tolerance: tol,
            });
        }
        panels[worst] = (l, m, gk21(f, l, m));
        panels.push((m, r, gk21(f, m, r)));
    }
}
