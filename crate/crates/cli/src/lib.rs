//! Command-line front end: configuration, exporters and the five commands.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use slideocam_core::CamError;

pub mod commands;
pub mod config;
pub mod export;
pub mod svg;

use config::{Format, Overrides, ResolutionTarget, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("infeasible model: {0}")]
    Infeasible(String),
}

impl CliError {
    /// 1 for configuration and i/o problems, 2 for an infeasible model.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

impl From<CamError> for CliError {
    fn from(err: CamError) -> Self {
        match err {
            CamError::InvalidDesignSpace(_) | CamError::TooFewSamples { .. } | CamError::Catalog(_) => {
                CliError::Config(err.to_string())
            }
            _ => CliError::Infeasible(err.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "slideocam", version, about = "Slide-o-Cam cam-roller transmission synthesis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run configuration; built-in defaults when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Sampling or grid resolution of the selected command.
    #[arg(long, global = true, value_name = "K")]
    pub resolution: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Material for both cam and roller.
    #[arg(long, global = true, value_name = "NAME")]
    pub material: Option<String>,
    /// Seed recorded in the metadata of randomised harness runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Cam profile, pitch curve and curvature.
    Profile,
    /// Pressure angle, Hertz pressure, size and feasibility of one design.
    Metrics,
    /// Normalised sensitivities of the Hertz pressure.
    Sensitivity,
    /// Grid sweep and Pareto fronts.
    Pareto,
    /// Objective contours over camshaft diameter and roller radius.
    Contour,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Profile => "profile",
            Command::Metrics => "metrics",
            Command::Sensitivity => "sensitivity",
            Command::Pareto => "pareto",
            Command::Contour => "contour",
        }
    }

    fn resolution_target(self) -> ResolutionTarget {
        match self {
            Command::Profile => ResolutionTarget::Profile,
            Command::Metrics => ResolutionTarget::None,
            Command::Sensitivity => ResolutionTarget::Sensitivity,
            Command::Pareto => ResolutionTarget::Sweep,
            Command::Contour => ResolutionTarget::Contour,
        }
    }
}

/// What a successful command reports.
#[derive(Debug)]
pub struct Outcome {
    pub summary: String,
    pub written: Vec<PathBuf>,
}

/// Loads the configuration, applies the flags and runs the command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut config = RunConfig::load(cli.config.as_deref())?;
    let overrides = Overrides {
        out: cli.out.clone(),
        resolution: cli.resolution,
        format: cli.format,
        material: cli.material.clone(),
        seed: cli.seed,
    };
    config.apply(&overrides, cli.command.resolution_target());
    config.resolve()?;
    commands::execute(cli.command, &config)
}
