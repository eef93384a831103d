//! JSON run configuration.
//!
//! Frequencies are ordinary frequencies `nu = omega / 2pi` in Hz, the PA
//! phase is in radians and the temperature in kelvin. Every physical key is
//! optional and falls back to [`PhysicalParams::baseline`]. Unknown keys are
//! rejected.
//!
//! ```json
//! {
//!   "mode": "sweep",
//!   "params": { "g_pa_hz": 1e6, "theta": 1.5707963267948966 },
//!   "axes": [
//!     { "parameter": "delta_c", "start": -2, "stop": 2, "points": 101 },
//!     { "parameter": "delta_2", "start": -2, "stop": 2, "points": 101 }
//!   ],
//!   "output": "pa_map.csv"
//! }
//! ```

use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::model::{ModelError, PhysicalParams};
use crate::sweep::{AxisSpec, FreeParameter, OptimizeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Point,
    Sweep,
    Optimize,
    Stability,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Point => "point",
            Mode::Sweep => "sweep",
            Mode::Optimize => "optimize",
            Mode::Stability => "stability",
        })
    }
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "point" => Ok(Mode::Point),
            "sweep" => Ok(Mode::Sweep),
            "optimize" => Ok(Mode::Optimize),
            "stability" => Ok(Mode::Stability),
            other => Err(CliError::Config(format!("unknown mode `{other}`"))),
        }
    }
}

/// Physical parameters as written in the config file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_b_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_c_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_1_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_2_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_c_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_1_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_2_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_b_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_1_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_2_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_mb_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_pa_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kerr_shift_k_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_c_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_m1_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_m2_hz: Option<f64>,
}

impl ConfigParams {
    /// Baseline parameters with every given key converted to rad/s.
    ///
    /// When `omega_b_hz` is overridden but the detunings are not, the
    /// baseline detunings keep their values in units of `omega_b`.
    pub fn to_physical(&self) -> PhysicalParams {
        let mut p = PhysicalParams::baseline();
        let hz = |v: Option<f64>, field: &mut f64| {
            if let Some(v) = v {
                *field = TAU * v;
            }
        };
        if let Some(v) = self.omega_b_hz {
            let ratio = TAU * v / p.omega_b;
            p.omega_b = TAU * v;
            p.delta_c *= ratio;
            p.delta_1 *= ratio;
            p.delta_2 *= ratio;
        }
        hz(self.delta_c_hz, &mut p.delta_c);
        hz(self.delta_1_hz, &mut p.delta_1);
        hz(self.delta_2_hz, &mut p.delta_2);
        hz(self.kappa_c_hz, &mut p.kappa_c);
        hz(self.kappa_1_hz, &mut p.kappa_1);
        hz(self.kappa_2_hz, &mut p.kappa_2);
        hz(self.gamma_b_hz, &mut p.gamma_b);
        hz(self.g_1_hz, &mut p.g_1);
        hz(self.g_2_hz, &mut p.g_2);
        hz(self.g_mb_hz, &mut p.g_mb);
        hz(self.g_pa_hz, &mut p.g_pa);
        hz(self.kerr_shift_k_hz, &mut p.kerr_shift_k);
        hz(self.omega_c_hz, &mut p.omega_c);
        hz(self.omega_m1_hz, &mut p.omega_m1);
        hz(self.omega_m2_hz, &mut p.omega_m2);
        if let Some(v) = self.theta {
            p.theta = v;
        }
        if let Some(v) = self.temperature_k {
            p.temperature = v;
        }
        p
    }
}

/// Config key holding a given [`PhysicalParams`] field.
fn config_key(field: &str) -> String {
    match field {
        "theta" => "theta".into(),
        "temperature" => "temperature_k".into(),
        other => format!("{other}_hz"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerSettings {
    pub grid_points: usize,
    pub max_simplex_evaluations: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        let o = OptimizeOptions::default();
        Self {
            grid_points: o.grid_points,
            max_simplex_evaluations: o.max_simplex_evaluations,
        }
    }
}

impl OptimizerSettings {
    pub fn options(&self) -> OptimizeOptions {
        OptimizeOptions {
            grid_points: self.grid_points,
            max_simplex_evaluations: self.max_simplex_evaluations,
            ..OptimizeOptions::default()
        }
    }
}

/// A validated run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default)]
    pub params: ConfigParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<AxisSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<Vec<FreeParameter>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<OptimizerSettings>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// On-disk form: `mode` may be left to the command line.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default)]
    params: ConfigParams,
    #[serde(default)]
    axes: Option<Vec<AxisSpec>>,
    #[serde(default)]
    free: Option<Vec<FreeParameter>>,
    #[serde(default)]
    optimizer: Option<OptimizerSettings>,
    #[serde(default)]
    output: Option<PathBuf>,
}

impl RunConfig {
    pub fn physical(&self) -> PhysicalParams {
        self.params.to_physical()
    }

    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            params: ConfigParams::default(),
            axes: None,
            free: None,
            optimizer: None,
            output: None,
        }
    }
}

/// 1-based line of the first occurrence of `"key"` in `text`.
fn line_of(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn at_key(text: &str, key: &str, msg: String) -> CliError {
    match line_of(text, key) {
        Some(line) => CliError::Config(format!("line {line}: {msg}")),
        None => CliError::Config(msg),
    }
}

/// Parses and validates a config. `cli_mode`, when given, must agree with
/// any `mode` in the file.
pub fn parse_config(text: &str, cli_mode: Option<Mode>) -> Result<RunConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config(format!("line {}: {e}", e.line())))?;
    let mode = match (raw.mode, cli_mode) {
        (Some(f), Some(c)) if f != c => {
            return Err(at_key(
                text,
                "mode",
                format!("config mode `{f}` conflicts with command `{c}`"),
            ))
        }
        (Some(m), _) | (None, Some(m)) => m,
        (None, None) => {
            return Err(CliError::Config(
                "no mode given in config or on the command line".into(),
            ))
        }
    };
    let cfg = RunConfig {
        mode,
        params: raw.params,
        axes: raw.axes,
        free: raw.free,
        optimizer: raw.optimizer,
        output: raw.output,
    };
    validate(&cfg, text)?;
    Ok(cfg)
}

pub fn write_config(cfg: &RunConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("config serializes")
}

fn validate(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    let p = cfg.physical();
    if let Err(ModelError::InvalidParameter { name, reason }) = p.validate() {
        let key = config_key(name);
        return Err(at_key(text, &key, format!("`{key}` {reason}")));
    }

    let needs_axes = matches!(cfg.mode, Mode::Sweep | Mode::Stability);
    match (&cfg.axes, needs_axes) {
        (None, true) => return Err(CliError::Config(format!("mode `{}` requires `axes`", cfg.mode))),
        (Some(_), false) => {
            return Err(at_key(
                text,
                "axes",
                format!("`axes` not allowed in mode `{}`", cfg.mode),
            ))
        }
        (Some(axes), true) => {
            crate::sweep::validate_axes(axes).map_err(|e| at_key(text, "axes", e.to_string()))?;
        }
        (None, false) => {}
    }

    let needs_free = cfg.mode == Mode::Optimize;
    match (&cfg.free, needs_free) {
        (None, true) => return Err(CliError::Config("mode `optimize` requires `free`".into())),
        (Some(_), false) => {
            return Err(at_key(
                text,
                "free",
                format!("`free` not allowed in mode `{}`", cfg.mode),
            ))
        }
        (Some(free), true) => {
            if free.is_empty() || free.len() > 3 {
                return Err(at_key(text, "free", "expected 1 to 3 free parameters".into()));
            }
            for f in free {
                if !f.lower.is_finite() || !f.upper.is_finite() || f.lower >= f.upper {
                    return Err(at_key(
                        text,
                        "free",
                        format!(
                            "free parameter `{}` needs finite bounds with lower < upper",
                            f.parameter
                        ),
                    ));
                }
            }
        }
        (None, false) => {}
    }
    if let Some(o) = &cfg.optimizer {
        if !needs_free {
            return Err(at_key(
                text,
                "optimizer",
                format!("`optimizer` not allowed in mode `{}`", cfg.mode),
            ));
        }
        if o.grid_points < 17 {
            return Err(at_key(text, "grid_points", "`grid_points` must be at least 17".into()));
        }
    }
    Ok(())
}
