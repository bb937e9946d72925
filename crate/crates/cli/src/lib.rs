//! Command-line front end for the `helijam` model.
//!
//! Every verb reads one TOML run configuration (see [`config`]), writes its
//! result to stdout or `--out`, and reports failures as a single
//! `helijam: error: <kind>: <message>` line on stderr.

pub mod commands;
pub mod config;
pub mod units;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Report;
use crate::config::{ConfigError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "helijam", version, about = "Helically wound electrostatic layer jamming toolkit")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; tables default to csv, reports to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Fill unset fields with the reference specimen constants.
    #[arg(long = "paper-fixtures", global = true)]
    pub reference_fixtures: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometry of the configured helix and the pitch check.
    HelixInfo,
    /// Terminal tension of the helical mechanism.
    Tension {
        #[command(subcommand)]
        mode: TensionMode,
    },
    /// Helical tension against a flat strip of the same contact length.
    ComparePlanar,
    /// Reduce raw force/torque logs to friction force per voltage.
    Process {
        /// Sensor logs, one per voltage.
        logs: Vec<PathBuf>,
        /// Comma-separated voltages with units, e.g. `1000V,1.4kV`.
        #[arg(long)]
        voltages: Option<String>,
        /// Outlier threshold in robust standard deviations.
        #[arg(long, default_value_t = helijam::experiment::DEFAULT_THRESHOLD_SIGMA)]
        threshold: f64,
    },
    /// Fit `T = a V^2 + b` to a voltage/force table.
    Fit {
        /// CSV with a `voltage` column and a force column.
        data: PathBuf,
        /// Also write the fitted curve sampled every 50 V.
        #[arg(long)]
        overlay: Option<PathBuf>,
    },
    /// Finger equilibrium angle and stiffness over a voltage/load grid.
    Finger,
}

#[derive(Debug, Subcommand)]
pub enum TensionMode {
    /// Single operating point from [drive].
    Eval,
    /// Cartesian sweep over [sweep] voltages, preloads and angles.
    Sweep,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] helijam::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
    #[error("{0} input(s) failed")]
    Partial(usize),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Model(_) => "model",
            CliError::Io(_) => "io",
            CliError::Input(_) => "input",
            CliError::Partial(_) => "partial",
        }
    }
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Tension {
            mode: TensionMode::Sweep,
        }
        | Command::Process { .. }
        | Command::Finger => Format::Csv,
        _ => Format::Text,
    }
}

/// Runs one command and returns its output without writing it anywhere.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let cfg = RunConfig::load(cli.config.as_deref(), cli.reference_fixtures)?;
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    match &cli.command {
        Command::HelixInfo => commands::helix_info(&cfg, format),
        Command::Tension { mode: TensionMode::Eval } => commands::tension_eval(&cfg, format),
        Command::Tension { mode: TensionMode::Sweep } => commands::tension_sweep(&cfg, format),
        Command::ComparePlanar => commands::compare_planar(&cfg, format),
        Command::Process {
            logs,
            voltages,
            threshold,
        } => commands::process(&cfg, logs, voltages.as_deref(), *threshold, format),
        Command::Fit { data, overlay } => commands::fit(&cfg, data, overlay.as_deref(), format),
        Command::Finger => {
            let (finger, voltages, loads) = if cli.reference_fixtures && !cfg.has_section("finger") {
                (
                    helijam::finger::fixture_finger(),
                    helijam::finger::FIXTURE_VOLTAGES.to_vec(),
                    helijam::finger::FIXTURE_LOADS.to_vec(),
                )
            } else {
                let finger = cfg.finger()?;
                let voltages = match cfg.list("sweep.voltages") {
                    Some(v) => v.to_vec(),
                    None => vec![cfg.drive()?.voltage],
                };
                let loads = cfg
                    .list("sweep.loads")
                    .ok_or_else(|| ConfigError::MissingField("sweep.loads".into()))?
                    .to_vec();
                (finger, voltages, loads)
            };
            commands::finger(&finger, &voltages, &loads, format)
        }
    }
}

/// Runs one command and writes its output to `--out`, `output.path` or
/// stdout. Per-input failures are printed to stderr after the output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let report = execute(cli)?;
    let cfg_out = match &cli.out {
        Some(_) => None,
        None => RunConfig::load(cli.config.as_deref(), false)
            .ok()
            .and_then(|c| c.output_path()),
    };
    match cli.out.clone().or(cfg_out) {
        Some(path) => std::fs::write(&path, &report.body)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{}", report.body),
    }
    for failure in &report.failures {
        eprintln!("helijam: error: input: {failure}");
    }
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Partial(report.failures.len()))
    }
}
