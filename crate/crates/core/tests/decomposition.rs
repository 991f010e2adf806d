use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use summa_core::decomposition::{bounded_sums, column_difference_checks, decomposition_table};
use summa_core::matrices::check_matrix_conditions;
use summa_core::sequences::make_weights;
use summa_core::{LazySequence, Thresholds, TriangularMethod, WeightSystem};

fn random_series(seed: u64, start: usize) -> LazySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LazySequence::new(start, move |n| {
        rng.random_range(-1.0..1.0) / (n as f64 + 1.0).powf(0.3)
    })
}

#[test]
fn residual_for_cesaro_half() {
    let m = TriangularMethod::cesaro(0.5).unwrap();
    let lam = LazySequence::new(0, |n| 1.0 / (n as f64 + 2.0).ln());
    for r in decomposition_table(&m, &random_series(11, 1), &lam, 800).unwrap() {
        assert!(r.within_tolerance(), "{r:?}");
    }
}

#[test]
fn column_lemma_for_weighted_means() {
    let thr = Thresholds::default();
    for w in [
        WeightSystem::unit(),
        make_weights(LazySequence::new(0, |n| n as f64 + 1.0)).unwrap(),
        make_weights(LazySequence::new(0, |n| 1.0 / (n as f64 + 1.0))).unwrap(),
    ] {
        let m = TriangularMethod::weighted_mean(&w);
        let conditions = check_matrix_conditions(&m, &w, 400, &thr).unwrap();
        assert!(conditions[..2].iter().all(|c| c.report.passed()));
        let c = column_difference_checks(&m, 400).unwrap();
        assert!(c.identity.passed());
        assert!(c.min_row_slack >= 0.0);
        assert!(c.min_column_slack >= 0.0);
    }
}

#[test]
fn unit_mean_hat_column_sums() {
    // â_{n,v+1} = (v+1)/(n(n+1)) for p = 1, so the column sum telescopes
    let m = TriangularMethod::weighted_mean(&WeightSystem::unit());
    let big_n = 300;
    let c = column_difference_checks(&m, big_n).unwrap();
    for (v, s) in c.hat_column_sums.iter().enumerate() {
        let want = (v as f64 + 1.0) * (1.0 / (v as f64 + 1.0) - 1.0 / (big_n as f64 + 1.0));
        assert!((s - want).abs() < 1e-13, "v {v}");
    }
}

#[test]
fn domination_holds_for_all_exponents() {
    let m = TriangularMethod::weighted_mean(&WeightSystem::unit());
    let lam = LazySequence::new(0, |n| 1.0 / (n as f64 + 1.0));
    for k in [1.0, 1.5, 2.0, 3.0] {
        let b = bounded_sums(
            &m,
            &random_series(3, 1),
            &lam,
            &WeightSystem::unit(),
            k,
            500,
        )
        .unwrap();
        assert!(b.domination.passed(), "k {k}: {:?}", b.domination);
    }
}

fn random_method(seed: u64, n: usize) -> TriangularMethod {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..=n)
        .map(|r| {
            let row: Vec<f64> = (0..=r).map(|_| rng.random_range(0.01..1.0)).collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(|x| x / s).collect()
        })
        .collect();
    TriangularMethod::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn residual_for_random_triples(seed in 0u64..10_000, decay in 0.0f64..2.0) {
        let m = random_method(seed, 60);
        let lam = LazySequence::new(0, move |n| (n as f64 + 1.0).powf(-decay));
        for r in decomposition_table(&m, &random_series(seed ^ 0xabc, 1), &lam, 60).unwrap() {
            prop_assert!(r.within_tolerance(), "{:?}", r);
        }
        let c = column_difference_checks(&m, 60).unwrap();
        prop_assert!(c.identity.passed());
    }
}
