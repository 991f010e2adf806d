use proptest::prelude::*;

use summa_core::matrices::{
    cesaro_coefficient, cesaro_means, check_matrix_conditions, companions, delta_transform,
    transform, transform_series, CompanionWalker,
};
use summa_core::sequences::{make_weights, partial_sums};
use summa_core::{LazySequence, Thresholds, TriangularMethod, WeightSystem};

fn families() -> Vec<(&'static str, WeightSystem)> {
    vec![
        ("1", WeightSystem::unit()),
        (
            "n+1",
            make_weights(LazySequence::new(0, |n| n as f64 + 1.0)).unwrap(),
        ),
        (
            "(n+1)^2",
            make_weights(LazySequence::new(0, |n| ((n + 1) * (n + 1)) as f64)).unwrap(),
        ),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

#[test]
fn weighted_mean_companions_closed_form() {
    for (name, w) in families() {
        let m = TriangularMethod::weighted_mean(&w);
        let wp = w.prefix(300).unwrap();
        let mut walker = CompanionWalker::new(&m, 1).unwrap();
        for n in 1..=300i64 {
            let row = walker.advance().unwrap();
            let (pn, big_n, big_prev) = (wp.p(n), wp.P(n), wp.P(n - 1));
            for v in 0..=n {
                let bar = (big_n - wp.P(v - 1)) / big_n;
                assert!(
                    rel(row.bar[v as usize], bar) <= 1e-13,
                    "{name}: bar n {n} v {v}"
                );
            }
            for v in 0..n {
                let hat = pn * wp.P(v) / (big_n * big_prev);
                assert!(
                    rel(row.hat[v as usize + 1], hat) <= 1e-13,
                    "{name}: hat n {n} v {v}"
                );
            }
        }
    }
}

#[test]
fn cesaro_coefficients_direct_product() {
    for alpha in [-0.5, 0.0, 0.5, 1.0, 2.3] {
        let mut prod = 1.0f64;
        for n in 0..400i64 {
            if n > 0 {
                prod *= (alpha + n as f64) / n as f64;
            }
            assert!(
                rel(cesaro_coefficient(alpha, n).unwrap(), prod) <= 1e-13,
                "alpha {alpha} n {n}"
            );
        }
    }
    assert!(cesaro_coefficient(-1.0, 3).is_err());
}

#[test]
fn cesaro_means_of_constant_partial_sums() {
    // s_n = 1 for all n: u = 1, t = 0
    let a = LazySequence::unit_impulse();
    for alpha in [0.5, 1.0] {
        for n in [0usize, 1, 10, 500] {
            let (u, t) = cesaro_means(&a, alpha, n).unwrap();
            assert!((u - 1.0).abs() < 1e-15 && t == 0.0);
        }
    }
}

#[test]
fn cesaro_one_means_by_hand() {
    let a = LazySequence::new(0, |n| (n as f64).cos());
    let s = partial_sums(&a);
    for n in 1..200usize {
        let (u, t) = cesaro_means(&a, 1.0, n).unwrap();
        let u_direct: f64 = (0..=n).map(|v| s.value(v)).sum::<f64>() / (n + 1) as f64;
        let t_direct: f64 = (1..=n).map(|v| v as f64 * a.value(v)).sum::<f64>() / (n + 1) as f64;
        assert!((u - u_direct).abs() < 1e-12);
        assert!((t - t_direct).abs() < 1e-12);
    }
}

#[test]
fn cesaro_half_matrix_conditions() {
    let m = TriangularMethod::cesaro(0.5).unwrap();
    let thr = Thresholds::default();
    // a_nn ~ n^{-1/2}, so the diagonal condition fails for p = 1
    let checks = check_matrix_conditions(&m, &WeightSystem::unit(), 1000, &thr).unwrap();
    for c in &checks {
        assert_eq!(
            c.report.passed(),
            c.id != "diagonal-vs-weight",
            "{}: {:?}",
            c.id,
            c.report
        );
    }
    // and holds once p_n/P_n ~ n^{-1/2}: P_n = exp(2 sqrt(n+1))
    let big = |n: usize| (2.0 * (n as f64 + 1.0).sqrt()).exp();
    let w = make_weights(LazySequence::new(0, move |n| {
        if n == 0 {
            big(0)
        } else {
            big(n) - big(n - 1)
        }
    }))
    .unwrap();
    let checks = check_matrix_conditions(&m, &w, 1000, &thr).unwrap();
    for c in &checks {
        assert!(c.report.passed(), "{}: {:?}", c.id, c.report);
    }
}

#[test]
fn series_and_sequence_forms_agree() {
    let a = LazySequence::new(0, |n| (-0.9f64).powi(n as i32) / (n as f64 + 1.0));
    let s = partial_sums(&a);
    for m in [
        TriangularMethod::cesaro(0.5).unwrap(),
        TriangularMethod::weighted_mean(&families()[2].1),
    ] {
        let mut running = 0.0;
        for n in 0..120 {
            let x = transform(&m, &s, n).unwrap();
            let y = transform_series(&m, &a, n).unwrap();
            running += delta_transform(&m, &a, n).unwrap();
            assert!((x - y).abs() < 1e-14);
            assert!((x - running).abs() < 1e-13);
        }
    }
}

fn random_rows() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..25).prop_flat_map(|n| {
        (1..=n)
            .map(|len| prop::collection::vec(0.05f64..1.0, len))
            .collect::<Vec<_>>()
    })
}

proptest! {
    #[test]
    fn companion_double_sums(rows in random_rows()) {
        let m = TriangularMethod::from_rows(rows.clone()).unwrap();
        for n in 0..rows.len() {
            let r = companions(&m, n).unwrap();
            // ā_n0 = row sum, ā_nv − ā_n(v+1) = a_nv
            let sum: f64 = rows[n].iter().sum();
            prop_assert!((r.bar[0] - sum).abs() <= 1e-14 * sum);
            for v in 0..n {
                prop_assert!((r.bar[v] - r.bar[v + 1] - rows[n][v]).abs() <= 1e-14);
            }
            // â_n0 and Σ_v (a_nv − a_(n−1)v) are both the change in row sum
            let prev: f64 = if n == 0 { 0.0 } else { rows[n - 1].iter().sum() };
            let col_sum: f64 = r.column_difference.iter().sum();
            let want = if n == 0 { rows[0][0] } else { sum - prev };
            prop_assert!((col_sum - want).abs() <= 1e-13);
            if n > 0 {
                prop_assert!((r.hat[0] - want).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn increments_telescope(rows in random_rows(), seed in 0u64..1000) {
        let m = TriangularMethod::from_rows(rows.clone()).unwrap();
        let a = LazySequence::new(0, move |n| ((n as u64 * 7919 + seed) % 13) as f64 - 6.0);
        let s = partial_sums(&a);
        let mut acc = 0.0;
        for n in 0..rows.len() {
            acc += delta_transform(&m, &a, n).unwrap();
            let direct: f64 = (0..=n).map(|v| rows[n][v] * s.value(v)).sum();
            prop_assert!((acc - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
        }
    }
}
