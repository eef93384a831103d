use nalgebra::Matrix2;

use super::{CovarianceMatrix, GaussianError, Result, Tolerances, TwoModeBlock};

/// Logarithmic negativity together with the smallest symplectic eigenvalue
/// of the partially transposed two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negativity {
    pub log_negativity: f64,
    pub nu_minus: f64,
}

/// Extracts rows/columns `{2i, 2i+1, 2j, 2j+1}` of `v`, in that order.
pub fn two_mode_block(v: &CovarianceMatrix, mode_i: usize, mode_j: usize) -> Result<TwoModeBlock> {
    if mode_i == mode_j {
        return Err(GaussianError::InvalidInput(format!(
            "mode indices must differ (both {mode_i})"
        )));
    }
    let needed = 2 * (mode_i.max(mode_j) + 1);
    if v.dim() < needed {
        return Err(GaussianError::InvalidInput(format!(
            "mode {} out of range for a {}x{} covariance matrix",
            mode_i.max(mode_j),
            v.dim(),
            v.dim()
        )));
    }
    let m = v.as_matrix();
    let block = |r: usize, c: usize| {
        Matrix2::new(
            m[(2 * r, 2 * c)],
            m[(2 * r, 2 * c + 1)],
            m[(2 * r + 1, 2 * c)],
            m[(2 * r + 1, 2 * c + 1)],
        )
    };
    Ok(TwoModeBlock {
        v1: block(mode_i, mode_i),
        v2: block(mode_j, mode_j),
        v12: block(mode_i, mode_j),
    })
}

pub fn log_negativity(block: &TwoModeBlock) -> Result<Negativity> {
    log_negativity_with(block, &Tolerances::default())
}

/// `E_N = max(0, -ln 2 nu)` with
/// `nu^2 = (Sigma - sqrt(Sigma^2 - 4 det V0)) / 2` and
/// `Sigma = det V1 + det V2 - 2 det V12`; the minus sign on the cross term
/// is what the partial transpose does to the two-mode invariants.
pub fn log_negativity_with(block: &TwoModeBlock, tol: &Tolerances) -> Result<Negativity> {
    let sigma = block.v1.determinant() + block.v2.determinant() - 2.0 * block.v12.determinant();
    let det_v0 = block.assemble().determinant();
    let mut disc = sigma * sigma - 4.0 * det_v0;
    if disc < 0.0 {
        if disc < -tol.discriminant_clamp {
            return Err(GaussianError::InvalidState(format!(
                "Sigma^2 - 4 det V0 = {disc:.3e} is negative"
            )));
        }
        disc = 0.0;
    }
    let nu_sq = 0.5 * (sigma - disc.sqrt());
    if nu_sq.is_nan() || nu_sq <= 0.0 {
        return Err(GaussianError::InvalidState(format!(
            "partially transposed symplectic eigenvalue squared is {nu_sq:.3e}"
        )));
    }
    let nu_minus = nu_sq.sqrt();
    Ok(Negativity {
        log_negativity: (-(2.0 * nu_minus).ln()).max(0.0),
        nu_minus,
    })
}
