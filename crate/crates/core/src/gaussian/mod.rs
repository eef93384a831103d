//! Gaussian continuous-variable machinery that does not know about the
//! physical model: matrix newtypes, Hurwitz stability, steady-state
//! Lyapunov solvers and the two-mode logarithmic negativity.
//!
//! Quadratures follow the `(x_1, y_1, x_2, y_2, ...)` ordering with
//! `V_ij = <u_i u_j + u_j u_i> / 2`, so the vacuum has variance 1/2.

mod lyapunov;
mod matrix;
mod negativity;
mod stability;

pub use lyapunov::{relative_residual, solve_lyapunov, solve_lyapunov_by_integration, solve_lyapunov_with};
pub use matrix::{symplectic_form, CovarianceMatrix, SquareMatrix, TwoModeBlock};
pub use negativity::{log_negativity, log_negativity_with, two_mode_block, Negativity};
pub use stability::{is_hurwitz, StabilityReport};

use thiserror::Error;

/// Numerical tolerances shared by the solvers in this module.
///
/// The defaults are the contract values; override only when probing
/// ill-conditioned instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum accepted `||AV + VA^T + D||_F / max(||D||_F, eps)`.
    pub residual: f64,
    /// Slack below 1/2 allowed for symplectic eigenvalues.
    pub physicality: f64,
    /// Relative asymmetry accepted when building a covariance matrix.
    pub symmetry: f64,
    /// Negative values of `Sigma^2 - 4 det V0` down to this are clamped to 0.
    pub discriminant_clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-10,
            physicality: 1e-9,
            symmetry: 1e-12,
            discriminant_clamp: 1e-9,
        }
    }
}

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("drift matrix is not Hurwitz (max real part {:.6e})", .0.max_real_part)]
    Unstable(StabilityReport),
    #[error("no convergence after {steps} steps (last relative derivative norm {last:.3e})")]
    Convergence { steps: usize, last: f64 },
    #[error("Lyapunov residual {0:.3e} exceeds tolerance")]
    Residual(f64),
    #[error("invalid Gaussian state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, GaussianError>;
