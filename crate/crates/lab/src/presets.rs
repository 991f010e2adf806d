//! Named scenarios, one per specialization of the general factor theorem,
//! plus a Fourier run and a negative control.

use crate::config::{
    CheckKind, ExperimentConfig, FunctionSpec, MethodSpec, Params, SeriesSpec, Tolerances,
    VariantSpec,
};

const BOUNDED_MEAN: &str = "sin(n)";
const FACTOR: &str = "1/(n+1)";
const MAJORANT: &str = "log(n+2)";

fn base(name: &str, description: &str) -> ExperimentConfig {
    ExperimentConfig {
        name: name.to_string(),
        description: description.to_string(),
        checks: vec![
            CheckKind::Hypotheses,
            CheckKind::MatrixConditions,
            CheckKind::Index,
            CheckKind::Decomposition,
        ],
        output: None,
        params: Params {
            k: 1.0,
            horizon: 5000,
            variant: VariantSpec::QuasiF {
                sigma: 0.5,
                beta: 1.0,
            },
        },
        series: SeriesSpec::MeanInverse {
            mean: BOUNDED_MEAN.to_string(),
        },
        factor: FACTOR.to_string(),
        majorant: MAJORANT.to_string(),
        weights: "1".to_string(),
        method: MethodSpec::WeightedMean { weights: None },
        tolerances: Tolerances::default(),
    }
}

/// All presets, in listing order.
pub fn presets() -> Vec<ExperimentConfig> {
    let mut thm23 = base(
        "thm23-weighted",
        "weighted mean a_nv = p_v/P_n with p_n = n+1: the |N,p_n|_k factor theorem for quasi-f-power increasing X",
    );
    thm23.weights = "n+1".to_string();

    let mut thm22 = base(
        "thm22-sigma",
        "beta = 0 with a weighted mean: the quasi-sigma-power increasing case of the |N,p_n|_k factor theorem",
    );
    thm22.weights = "n+1".to_string();
    thm22.params.variant = VariantSpec::QuasiSigma { sigma: 0.5 };

    let mut abs_a = base(
        "abs-A-k",
        "p_n = 1 with a non-Cesaro matrix A = (N, n+1): the |A|_k factor theorem",
    );
    abs_a.params.k = 1.5;
    abs_a.method = MethodSpec::WeightedMean {
        weights: Some("n+1".to_string()),
    };

    let mut c1 = base(
        "C1-k",
        "a_nv = p_v/P_n with p_n = 1: the |C,1|_k specialization, with the |C,1|_k ledger alongside",
    );
    c1.params.k = 2.0;

    let mut fourier = base(
        "fourier-sawtooth",
        "f(t) = t at x = 1 with a weighted mean and p_n = 1: factor theorem for sum C_n(x) lambda_n",
    );
    fourier.checks = vec![CheckKind::Fourier, CheckKind::Decomposition];
    fourier.params.horizon = 10_000;
    fourier.series = SeriesSpec::Fourier {
        function: FunctionSpec::Sawtooth,
        x: 1.0,
    };

    let mut control = base(
        "control-unit-factor",
        "negative control: lambda_n = 1 violates lambda_m X_m = O(1) for X_n = log(n+2)",
    );
    control.checks = vec![CheckKind::Hypotheses, CheckKind::Lemma];
    control.factor = "1".to_string();

    vec![thm23, thm22, abs_a, c1, fourier, control]
}

pub fn preset(name: &str) -> Option<ExperimentConfig> {
    presets().into_iter().find(|p| p.name == name)
}
