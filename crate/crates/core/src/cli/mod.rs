//! Command-line front end: configuration, dispatch and result files.
//!
//! Exit codes: 0 success, 1 internal error, 2 unstable `point` run,
//! 3 configuration error.

pub mod config;
pub mod output;
pub mod plot;

use std::io::Write;
use std::path::Path;

use thiserror::Error;

pub use config::{parse_config, write_config, ConfigParams, Mode, OptimizerSettings, RunConfig};
pub use plot::{emit_plot_script, PlotKind};

use crate::model::{compute_entanglement, ModelError};
use crate::sweep::{optimize, stability_region, sweep, SweepError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidParameter { .. } => CliError::Config(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Config(msg) => CliError::Config(msg),
            SweepError::Model(m) => m.into(),
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn require_output(cfg: &RunConfig) -> Result<&Path, CliError> {
    cfg.output
        .as_deref()
        .ok_or_else(|| CliError::Config(format!("mode `{}` needs an output path (`output` or --out)", cfg.mode)))
}

/// Executes a validated config, writing human-readable lines to `stdout`.
/// Returns the process exit code on success paths (0, or 2 for an unstable
/// point).
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = cfg.physical();
    let io = |e: std::io::Error| CliError::Internal(e.to_string());
    match cfg.mode {
        Mode::Point => {
            let r = compute_entanglement(&params)?;
            writeln!(stdout, "{}", output::point_line(&r)).map_err(io)?;
            if let Some(path) = &cfg.output {
                write_file(path, &output::point_csv(&r))?;
            }
            Ok(if r.stable { EXIT_OK } else { EXIT_UNSTABLE })
        }
        Mode::Sweep => {
            let path = require_output(cfg)?;
            let axes = cfg.axes.as_deref().unwrap_or_default();
            let r = sweep(&params, axes)?;
            write_file(path, &output::sweep_csv(&r))?;
            let coords = r
                .argmax
                .as_ref()
                .map(|c| c.iter().map(|x| output::fmt_float(*x)).collect::<Vec<_>>().join(","))
                .unwrap_or_else(|| "none".into());
            writeln!(
                stdout,
                "points={} stable={} max_E_N={} argmax={}",
                r.len(),
                r.stability.iter().filter(|s| **s).count(),
                output::fmt_float(r.max_value),
                coords
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Mode::Stability => {
            let path = require_output(cfg)?;
            let axes = cfg.axes.as_deref().unwrap_or_default();
            let r = stability_region(&params, axes)?;
            write_file(path, &output::stability_csv(&r))?;
            writeln!(
                stdout,
                "points={} stable={}",
                r.len(),
                r.stability.iter().filter(|s| **s).count()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Mode::Optimize => {
            let path = require_output(cfg)?;
            let free = cfg.free.as_deref().unwrap_or_default();
            let opts = cfg.optimizer.unwrap_or_default().options();
            let r = optimize(&params, free, &opts)?;
            write_file(path, &output::optimize_csv(free, &r))?;
            writeln!(stdout, "{}", output::optimize_summary(free, &r)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}
