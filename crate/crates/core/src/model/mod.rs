//! The cavity-magnomechanical model: parameters, thermal occupations, the
//! mean-field operating point and the linearized drift and diffusion
//! matrices that feed the Gaussian steady-state machinery.

mod linearized;
mod mean_field;
mod params;

pub use linearized::{
    build_diffusion, build_drift, compute_entanglement, drift_stability, steady_state_covariance, EntanglementResult,
    CAVITY, MAGNON_1, MAGNON_2, MECHANICS,
};
pub use mean_field::{
    effective_coupling, kerr_shift_from_mean_field, stationarity_residuals, steady_state_mean_field,
    MeanFieldDiagnostics, MeanFieldSolution, MeanFieldState,
};
pub use params::{
    rabi_frequency, spin_number, thermal_occupation, DriveParams, PhysicalParams, GYROMAGNETIC_GAMMA, HBAR, K_B,
    SPIN_DENSITY_RHO,
};

use thiserror::Error;

use crate::gaussian::GaussianError;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },
    #[error("mean-field solver did not converge: {0}")]
    Convergence(String),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Self::InvalidParameter { name, reason }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
