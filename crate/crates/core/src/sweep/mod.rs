//! Parameter grids and optimization over the entanglement landscape.
//!
//! Axis values are in plotting units:
//! detunings and the Kerr shift are multiples of `omega_b`, the PA gain is an
//! ordinary frequency in Hz, the phase is in radians and the temperature in
//! kelvin.

mod grid;
mod optimize;

pub use grid::{stability_region, sweep, SweepResult};
pub use optimize::{optimize, FreeParameter, OptimizeOptions, OptimizeResult};

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ModelError, PhysicalParams};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type Result<T> = std::result::Result<T, SweepError>;

/// A field of [`PhysicalParams`] that can be put on an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SweepParameter {
    DeltaC,
    Delta1,
    Delta2,
    Theta,
    GainPa,
    KerrShift,
    Temperature,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 7] = [
        Self::DeltaC,
        Self::Delta1,
        Self::Delta2,
        Self::Theta,
        Self::GainPa,
        Self::KerrShift,
        Self::Temperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DeltaC => "delta_c",
            Self::Delta1 => "delta_1",
            Self::Delta2 => "delta_2",
            Self::Theta => "theta",
            Self::GainPa => "G_pa",
            Self::KerrShift => "kerr_shift_k",
            Self::Temperature => "temperature",
        }
    }

    /// CSV column header for this axis.
    pub fn column(self) -> &'static str {
        match self {
            Self::DeltaC => "delta_c_over_wb",
            Self::Delta1 => "delta_1_over_wb",
            Self::Delta2 => "delta_2_over_wb",
            Self::Theta => "theta_rad",
            Self::GainPa => "G_pa_hz",
            Self::KerrShift => "kerr_shift_k_over_wb",
            Self::Temperature => "temperature_k",
        }
    }

    pub fn from_column(column: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.column() == column)
    }

    /// Writes an axis value into `params`.
    pub fn apply(self, params: &mut PhysicalParams, value: f64) {
        let wb = params.omega_b;
        match self {
            Self::DeltaC => params.delta_c = value * wb,
            Self::Delta1 => params.delta_1 = value * wb,
            Self::Delta2 => params.delta_2 = value * wb,
            Self::Theta => params.theta = wrap_phase(value),
            Self::GainPa => params.g_pa = TAU * value,
            Self::KerrShift => params.kerr_shift_k = value * wb,
            Self::Temperature => params.temperature = value,
        }
    }

    /// Reads the axis value back out of `params`.
    pub fn value(self, params: &PhysicalParams) -> f64 {
        let wb = params.omega_b;
        match self {
            Self::DeltaC => params.delta_c / wb,
            Self::Delta1 => params.delta_1 / wb,
            Self::Delta2 => params.delta_2 / wb,
            Self::Theta => params.theta,
            Self::GainPa => params.g_pa / TAU,
            Self::KerrShift => params.kerr_shift_k / wb,
            Self::Temperature => params.temperature,
        }
    }
}

/// Maps any phase into `[0, 2pi)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| SweepError::Config(format!("unknown sweep parameter `{s}`")))
    }
}

impl TryFrom<String> for SweepParameter {
    type Error = SweepError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SweepParameter> for String {
    fn from(p: SweepParameter) -> String {
        p.name().to_string()
    }
}

/// One grid axis: `points` evenly spaced values from `start` to `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(parameter: SweepParameter, start: f64, stop: f64, points: usize) -> Self {
        Self {
            parameter,
            start,
            stop,
            points,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(SweepError::Config(format!(
                "axis `{}` has non-finite bounds",
                self.parameter
            )));
        }
        if self.start == self.stop {
            return Err(SweepError::Config(format!(
                "axis `{}` has start == stop",
                self.parameter
            )));
        }
        if self.points < 2 {
            return Err(SweepError::Config(format!(
                "axis `{}` needs at least 2 points",
                self.parameter
            )));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

pub(crate) fn validate_axes(axes: &[AxisSpec]) -> Result<()> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(SweepError::Config(format!("expected 1 or 2 axes, got {}", axes.len())));
    }
    for a in axes {
        a.validate()?;
    }
    if axes.len() == 2 && axes[0].parameter == axes[1].parameter {
        return Err(SweepError::Config(format!("axis `{}` given twice", axes[0].parameter)));
    }
    Ok(())
}
