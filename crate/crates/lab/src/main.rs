use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use summa_lab::config::{CheckKind, ExperimentConfig};
use summa_lab::{presets, report, run, RunOptions};

/// Runs summability factor experiments and writes CSV reports.
#[derive(Parser)]
#[command(name = "summa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check named in a config file or preset (`preset:<name>`).
    Run {
        config: String,
        #[command(flatten)]
        opts: Overrides,
    },
    /// Run a single check.
    Check {
        config: String,
        #[arg(long)]
        only: CheckKind,
        #[command(flatten)]
        opts: Overrides,
    },
    /// List the built-in presets.
    ListPresets,
    /// Print a preset as TOML.
    ShowPreset { name: String },
}

#[derive(Args)]
struct Overrides {
    /// Output directory (default: the config's `output`, else `out/<name>`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Horizon override.
    #[arg(long = "N", value_name = "INT")]
    horizon: Option<usize>,
    /// Fourier coefficient tolerance override.
    #[arg(long, value_name = "FLOAT")]
    tol: Option<f64>,
    /// Exit with status 2 unless every check passes.
    #[arg(long)]
    strict: bool,
}

fn load(spec: &str) -> Result<(ExperimentConfig, PathBuf)> {
    if let Some(name) = spec.strip_prefix("preset:") {
        let cfg = presets::preset(name)
            .ok_or_else(|| anyhow!("unknown preset `{name}` (see `summa list-presets`)"))?;
        return Ok((cfg, PathBuf::from(".")));
    }
    let path = Path::new(spec);
    let cfg = ExperimentConfig::load(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((cfg, base))
}

fn execute(spec: &str, only: Option<CheckKind>, o: Overrides) -> Result<ExitCode> {
    let (cfg, base) = load(spec)?;
    let opts = RunOptions {
        only,
        horizon: o.horizon,
        tolerance: o.tol,
    };
    let r = run::execute(&cfg, &opts, &base)?;
    let dir = o
        .out
        .or_else(|| cfg.output.as_ref().map(|p| base.join(p)))
        .unwrap_or_else(|| Path::new("out").join(&cfg.name));
    report::write(&r, &dir).with_context(|| format!("writing reports to {}", dir.display()))?;
    print!("{}", report::summary(&r));
    println!("reports: {}", dir.display());
    if o.strict && !r.overall().is_pass() {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, opts } => execute(&config, None, opts),
        Command::Check { config, only, opts } => execute(&config, Some(only), opts),
        Command::ListPresets => {
            let all = presets::presets();
            let width = all.iter().map(|p| p.name.len()).max().unwrap_or(0);
            for p in all {
                println!("{:<width$}  {}", p.name, p.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ShowPreset { name } => presets::preset(&name)
            .ok_or_else(|| anyhow!("unknown preset `{name}`"))
            .and_then(|p| Ok(p.render()?))
            .map(|s| {
                print!("{s}");
                ExitCode::SUCCESS
            }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
