use std::f64::consts::PI;

use summa_core::fourier::{
    bv_diagnostic, fourier_coefficients, fourier_summability_experiment, phi, phi_alpha,
    FourierExperiment, FourierState, PeriodicFunction, Smoothness,
};
use summa_core::quadrature::integrate;
use summa_core::sequences::LazySequence;
use summa_core::summability::Variant;
use summa_core::{Thresholds, TriangularMethod, Verdict, WeightSystem};

/// `I_0(z) = Σ (z/2)^{2m} / (m!)^2`.
fn bessel_i0(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let (mut term, mut sum) = (1.0, 1.0);
    for m in 1..60 {
        term *= q / (m * m) as f64;
        sum += term;
    }
    sum
}

#[test]
fn parseval_for_smooth_function() {
    let f = PeriodicFunction::new("exp(cos t)", Smoothness::Smooth, |t| t.cos().exp());
    let mut s = FourierState::new(&f, 0.0).unwrap();
    s.fill(512).unwrap();
    let c = s.coefficients();
    let a0 = c[0].0;
    assert!((a0 - 2.0 * bessel_i0(1.0)).abs() < 1e-12);
    let energy: f64 = c[1..].iter().map(|&(a, b)| a * a + b * b).sum();
    // (1/π)∫ e^{2 cos t} = 2 I_0(2)
    let oracle = 2.0 * bessel_i0(2.0) - 0.5 * a0 * a0;
    assert!((energy - oracle).abs() < 1e-6);
}

#[test]
fn even_function_has_no_sine_terms() {
    for f in [PeriodicFunction::triangle(), PeriodicFunction::cosine(3)] {
        for n in 0..64 {
            assert!(fourier_coefficients(&f, n).unwrap().1.abs() < 1e-10);
        }
    }
}

#[test]
fn triangle_coefficients_closed_form() {
    let f = PeriodicFunction::triangle();
    for n in 1..100usize {
        let (a, _) = fourier_coefficients(&f, n).unwrap();
        let want = if n % 2 == 1 {
            -4.0 / (PI * (n * n) as f64)
        } else {
            0.0
        };
        assert!((a - want).abs() < 1e-10, "n {n}");
    }
}

#[test]
fn shift_identity() {
    let f = PeriodicFunction::triangle();
    let x = 0.7;
    let mut s = FourierState::new(&f, x).unwrap();
    s.fill(60).unwrap();
    for n in 1..=60usize {
        let direct = integrate(
            &mut |t: f64| f.eval(t) * (n as f64 * (t - x)).cos(),
            -PI,
            PI,
            &[0.0],
            1e-12,
        )
        .unwrap()
        .value
            / PI;
        assert!((s.c(n) - direct).abs() < 1e-8, "n {n}");
    }
}

#[test]
fn single_term_series_means() {
    let mut s = FourierState::new(&PeriodicFunction::sine(1), PI / 2.0).unwrap();
    s.fill(200).unwrap();
    for n in 1..=200usize {
        assert!((s.t_n_of_x(n) - 1.0 / (n as f64 + 1.0)).abs() < 1e-12);
    }

    let zero = PeriodicFunction::new("0", Smoothness::Smooth, |_| 0.0);
    let mut s = FourierState::new(&zero, 0.4).unwrap();
    s.fill(50).unwrap();
    assert!((0..=50).all(|n| s.t_n_of_x(n) == 0.0));

    let mut s = FourierState::new(&PeriodicFunction::sawtooth(), 0.0).unwrap();
    s.fill(100).unwrap();
    assert!((0..=100).all(|n| s.c(n).abs() < 1e-10 && s.t_n_of_x(n).abs() < 1e-10));
}

#[test]
fn phi_examples() {
    let x = 0.9;
    let p = phi(&PeriodicFunction::cosine(1), x).unwrap();
    for t in [0.1, 1.0, 2.5, PI] {
        assert!((p.eval(t) - x.cos() * t.cos()).abs() < 1e-12);
    }
    // even f at 0: φ = f − a_0/2, here a_0 = π
    let p = phi(&PeriodicFunction::triangle(), 0.0).unwrap();
    for t in [0.1, 1.0, 2.5] {
        assert!((p.eval(t) - (t - PI / 2.0)).abs() < 1e-10);
    }
}

#[test]
fn phi_alpha_of_linear() {
    // φ(u) = u − π/2, so φ_α(t) = t/(1+α) − π/2
    for alpha in [0.25, 0.5, 1.0, 2.0] {
        let p = phi_alpha(&PeriodicFunction::triangle(), 0.0, alpha).unwrap();
        for t in [0.05, 0.8, 2.0, PI] {
            let want = t / (1.0 + alpha) - PI / 2.0;
            assert!(
                (p.eval(t).unwrap() - want).abs() < 1e-10,
                "alpha {alpha} t {t}"
            );
        }
    }
}

#[test]
fn phi_one_is_running_mean() {
    let x = 0.4;
    let p = phi_alpha(&PeriodicFunction::cosine(1), x, 1.0).unwrap();
    for t in [0.3, 1.7, PI] {
        let m = 1_000_000;
        let h = t / m as f64;
        let g = |u: f64| x.cos() * u.cos();
        let mut s = 0.5 * (g(0.0) + g(t));
        for i in 1..m {
            s += g(h * i as f64);
        }
        let oracle = s * h / t;
        assert!((p.eval(t).unwrap() - oracle).abs() < 1e-10);
    }
    let grid = p.on_grid(64).unwrap();
    for (i, v) in grid.iter().enumerate() {
        let t = PI * (i + 1) as f64 / 64.0;
        assert!((v - x.cos() * t.sin() / t).abs() < 1e-12);
    }
}

#[test]
fn variation_of_sawtooth_phi() {
    let p = phi(&PeriodicFunction::sawtooth(), 1.0).unwrap();
    let d = bv_diagnostic(
        |t| p.eval(t),
        &[256, 512, 1024, 2048],
        &Thresholds::default(),
    )
    .unwrap();
    for &(_, v) in &d.levels {
        assert!((v - PI).abs() < 1e-12);
    }
    assert_eq!(d.report.verdict, Verdict::ConsistentWithBounded);
}

fn sawtooth_experiment(factor: LazySequence, horizon: usize) -> FourierExperiment {
    let mut e = FourierExperiment::new(
        PeriodicFunction::sawtooth(),
        1.0,
        factor,
        LazySequence::new(0, |n| (n as f64 + 2.0).ln()),
        WeightSystem::unit(),
        TriangularMethod::weighted_mean(&WeightSystem::unit()),
    );
    e.horizon = horizon;
    e
}

#[test]
fn zero_factor_gives_zero_ledger() {
    let out = fourier_summability_experiment(
        &sawtooth_experiment(LazySequence::zeros(0), 200),
        &Thresholds::default(),
    )
    .unwrap();
    assert!(out.index.terms.iter().all(|&t| t == 0.0));
}

#[test]
fn sawtooth_experiment_small() {
    let thr = Thresholds::default();
    let out = fourier_summability_experiment(
        &sawtooth_experiment(LazySequence::new(0, |n| 1.0 / (n as f64 + 1.0)), 2000),
        &thr,
    )
    .unwrap();
    assert!(out.bv_phi1.report.passed());
    assert!(out.bv_phi.report.passed());
    assert!(out.t_sup.passed());
    assert!(out.index.report(&thr).passed());
    assert_eq!(out.hypotheses.variant, Variant::AlmostIncreasing);
    assert_eq!(out.c.len(), 2001);
}
