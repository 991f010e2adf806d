//! Declarative experiment configuration (TOML).

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use summa_core::sequences::expr;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("cannot render config: {0}")]
    Render(#[from] toml::ser::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Hypotheses,
    Lemma,
    MatrixConditions,
    Index,
    Decomposition,
    Fourier,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Hypotheses,
        CheckKind::Lemma,
        CheckKind::MatrixConditions,
        CheckKind::Index,
        CheckKind::Decomposition,
        CheckKind::Fourier,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Hypotheses => "hypotheses",
            CheckKind::Lemma => "lemma",
            CheckKind::MatrixConditions => "matrix-conditions",
            CheckKind::Index => "index",
            CheckKind::Decomposition => "decomposition",
            CheckKind::Fourier => "fourier",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckKind::ALL.iter().map(|c| c.as_str()).collect();
                format!("unknown check `{s}`, expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VariantSpec {
    AlmostIncreasing,
    QuasiSigma { sigma: f64 },
    QuasiF { sigma: f64, beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub k: f64,
    #[serde(rename = "N")]
    pub horizon: usize,
    pub variant: VariantSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Sawtooth,
    Square,
    Triangle,
    #[serde(alias = "sin")]
    Sine {
        m: u32,
    },
    #[serde(alias = "cos")]
    Cosine {
        m: u32,
    },
    /// `t, f(t)` per line, or one value per line equispaced on `[−π, π)`;
    /// linearly interpolated.
    #[serde(alias = "custom")]
    Samples {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SeriesSpec {
    /// `a_n` given by an expression in `n`, from `start` on.
    Expr {
        expr: String,
        #[serde(default = "one")]
        start: usize,
    },
    /// The series whose `(C,1)` mean of `(n a_n)` is the given expression.
    MeanInverse { mean: String },
    /// `a_n = C_n(x)` for a periodic function.
    Fourier { function: FunctionSpec, x: f64 },
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MethodSpec {
    /// `a_nv = q_v/Q_n`; `q` defaults to the experiment weights.
    #[serde(alias = "weighted_mean")]
    WeightedMean {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<String>,
    },
    Cesaro {
        alpha: f64,
    },
    Identity,
    /// Lower-triangular rows, one comma-separated row per line.
    #[serde(alias = "custom")]
    Dense {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_coefficient")]
    pub coefficient: f64,
    #[serde(default = "default_bounded_below")]
    pub bounded_below: f64,
    #[serde(default = "default_diverging_above")]
    pub diverging_above: f64,
}

fn default_coefficient() -> f64 {
    summa_core::fourier::DEFAULT_COEFFICIENT_TOLERANCE
}

fn default_bounded_below() -> f64 {
    summa_core::Thresholds::default().bounded_below
}

fn default_diverging_above() -> f64 {
    summa_core::Thresholds::default().diverging_above
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            coefficient: default_coefficient(),
            bounded_below: default_bounded_below(),
            diverging_above: default_diverging_above(),
        }
    }
}

impl Tolerances {
    pub fn thresholds(&self) -> summa_core::Thresholds {
        summa_core::Thresholds {
            bounded_below: self.bounded_below,
            diverging_above: self.diverging_above,
        }
    }
}

fn unit_weights() -> String {
    "1".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub checks: Vec<CheckKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub params: Params,
    pub series: SeriesSpec,
    /// `λ_n`, from `n = 0`.
    pub factor: String,
    /// `X_n`, from `n = 0`.
    pub majorant: String,
    /// `p_n`, from `n = 0`.
    #[serde(default = "unit_weights")]
    pub weights: String,
    pub method: MethodSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn check_expr(field: &str, src: &str) -> Result<(), ConfigError> {
    expr::parse(src)
        .map(|_| ())
        .map_err(|e| invalid(field, e.to_string()))
}

impl ExperimentConfig {
    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(src)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let src = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&src)
    }

    pub fn render(&self) -> Result<String, ConfigError> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        if self.checks.is_empty() {
            return Err(invalid("checks", "at least one check is required"));
        }
        let p = &self.params;
        if !(p.k >= 1.0 && p.k.is_finite()) {
            return Err(invalid(
                "params.k",
                format!("must satisfy k >= 1 (got {})", p.k),
            ));
        }
        if p.horizon < 2 {
            return Err(invalid(
                "params.N",
                format!("must satisfy N >= 2 (got {})", p.horizon),
            ));
        }
        match p.variant {
            VariantSpec::AlmostIncreasing => {}
            VariantSpec::QuasiSigma { sigma } => check_sigma(sigma)?,
            VariantSpec::QuasiF { sigma, beta } => {
                check_sigma(sigma)?;
                if !(beta >= 0.0 && beta.is_finite()) {
                    return Err(invalid(
                        "params.variant.beta",
                        format!("must satisfy beta >= 0 (got {beta})"),
                    ));
                }
            }
        }
        match &self.series {
            SeriesSpec::Expr { expr, .. } => check_expr("series.expr", expr)?,
            SeriesSpec::MeanInverse { mean } => check_expr("series.mean", mean)?,
            SeriesSpec::Fourier { x, .. } => {
                if !(-PI..=PI).contains(x) {
                    return Err(invalid(
                        "series.x",
                        format!("must lie in [-pi, pi] (got {x})"),
                    ));
                }
            }
        }
        if self.checks.contains(&CheckKind::Fourier)
            && !matches!(self.series, SeriesSpec::Fourier { .. })
        {
            return Err(invalid(
                "checks",
                "the fourier check needs a fourier series",
            ));
        }
        check_expr("factor", &self.factor)?;
        check_expr("majorant", &self.majorant)?;
        check_expr("weights", &self.weights)?;
        match &self.method {
            MethodSpec::WeightedMean { weights: Some(w) } => check_expr("method.weights", w)?,
            MethodSpec::Cesaro { alpha } if !(*alpha > 0.0 && *alpha <= 1.0) => {
                return Err(invalid(
                    "method.alpha",
                    format!("must satisfy 0 < alpha <= 1 (got {alpha})"),
                ));
            }
            _ => {}
        }
        let t = &self.tolerances;
        if !(t.coefficient > 0.0 && t.coefficient.is_finite()) {
            return Err(invalid("tolerances.coefficient", "must be positive"));
        }
        if !(t.bounded_below > 0.0 && t.bounded_below <= t.diverging_above) {
            return Err(invalid(
                "tolerances.bounded_below",
                "must be positive and at most tolerances.diverging_above",
            ));
        }
        Ok(())
    }

    /// The `(X_n)` class the hypotheses are checked against.
    pub fn variant(&self) -> summa_core::summability::Variant {
        use summa_core::summability::Variant;
        match self.params.variant {
            VariantSpec::AlmostIncreasing => Variant::AlmostIncreasing,
            VariantSpec::QuasiSigma { sigma } => Variant::QuasiSigma { sigma },
            VariantSpec::QuasiF { sigma, beta } => Variant::QuasiF { sigma, beta },
        }
    }
}

fn check_sigma(sigma: f64) -> Result<(), ConfigError> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(invalid(
            "params.variant.sigma",
            format!("must satisfy 0 < sigma < 1 (got {sigma})"),
        ))
    }
}
