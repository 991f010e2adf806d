//! Experiment runner for `summa-core`: TOML configs, named presets, CSV
//! reports and the `summa` command line.

pub mod config;
pub mod presets;
pub mod report;
pub mod resolve;
pub mod run;

pub use config::{CheckKind, ConfigError, ExperimentConfig};
pub use run::{execute, RunOptions, RunReport};
