//! Linearized fluctuation dynamics `du/dt = A u + n` in the quadrature
//! ordering `(X, Y, x1, y1, x2, y2, q, p)` and its steady state.

use crate::gaussian::{
    is_hurwitz, log_negativity, solve_lyapunov, two_mode_block, CovarianceMatrix, GaussianError, SquareMatrix,
    StabilityReport,
};

use super::{thermal_occupation, PhysicalParams, Result};

pub const CAVITY: usize = 0;
pub const MAGNON_1: usize = 1;
pub const MAGNON_2: usize = 2;
pub const MECHANICS: usize = 3;

/// The 8x8 drift matrix, in rad/s.
pub fn build_drift(p: &PhysicalParams) -> SquareMatrix {
    let (s, c) = p.theta.sin_cos();
    let pa_c = 2.0 * p.g_pa * c;
    let pa_s = 2.0 * p.g_pa * s;
    let (g1, g2, gmb, k) = (p.g_1, p.g_2, p.g_mb, p.kerr_shift_k);
    #[rustfmt::skip]
    let rows = [
        -p.kappa_c + pa_c, p.delta_c + pa_s,  0.0,  g1,               0.0,        g2,         0.0,       0.0,
        -p.delta_c + pa_s, -p.kappa_c - pa_c, -g1,  0.0,              -g2,        0.0,        0.0,       0.0,
        0.0,               g1,                -p.kappa_1, p.delta_1 - k, 0.0,     0.0,        -gmb,      0.0,
        -g1,               0.0,               -p.delta_1 - k, -p.kappa_1, 0.0,    0.0,        0.0,       0.0,
        0.0,               g2,                0.0,  0.0,              -p.kappa_2, p.delta_2,  0.0,       0.0,
        -g2,               0.0,               0.0,  0.0,              -p.delta_2, -p.kappa_2, 0.0,       0.0,
        0.0,               0.0,               0.0,  0.0,              0.0,        0.0,        0.0,       p.omega_b,
        0.0,               0.0,               0.0,  gmb,              0.0,        0.0,        -p.omega_b, -p.gamma_b,
    ];
    SquareMatrix::from_rows(8, &rows).expect("finite parameters give a finite drift matrix")
}

/// Diagonal diffusion matrix. The `q` entry is exactly zero: thermal noise
/// enters the mechanics through the momentum only.
pub fn build_diffusion(p: &PhysicalParams) -> Result<SquareMatrix> {
    let t = p.temperature;
    let nc = thermal_occupation(p.omega_c, t)?;
    let n1 = thermal_occupation(p.omega_m1, t)?;
    let n2 = thermal_occupation(p.omega_m2, t)?;
    let nb = thermal_occupation(p.omega_b, t)?;
    let dc = p.kappa_c * (2.0 * nc + 1.0);
    let d1 = p.kappa_1 * (2.0 * n1 + 1.0);
    let d2 = p.kappa_2 * (2.0 * n2 + 1.0);
    let db = p.gamma_b * (2.0 * nb + 1.0);
    Ok(SquareMatrix::from_diagonal(&[dc, dc, d1, d1, d2, d2, 0.0, db])?)
}

/// Steady-state entanglement between the two magnon modes at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementResult {
    pub stable: bool,
    /// Present only when `stable`.
    pub nu_minus: Option<f64>,
    /// Present only when `stable`.
    pub log_negativity: Option<f64>,
    pub stability: StabilityReport,
}

impl EntanglementResult {
    /// `E_N`, with unstable points scored as zero.
    pub fn score(&self) -> f64 {
        self.log_negativity.unwrap_or(0.0)
    }
}

fn normalized(p: &PhysicalParams) -> Result<(SquareMatrix, SquareMatrix)> {
    p.validate()?;
    let scale = 1.0 / p.omega_b;
    Ok((build_drift(p).scaled(scale)?, build_diffusion(p)?.scaled(scale)?))
}

/// Stability of the fluctuation dynamics, with the drift measured in units
/// of `omega_b`.
pub fn drift_stability(p: &PhysicalParams) -> Result<StabilityReport> {
    p.validate()?;
    Ok(is_hurwitz(&build_drift(p).scaled(1.0 / p.omega_b)?))
}

/// Full 8x8 steady-state covariance matrix. Fails with
/// [`GaussianError::Unstable`] when the drift is not Hurwitz.
pub fn steady_state_covariance(p: &PhysicalParams) -> Result<CovarianceMatrix> {
    let (a, d) = normalized(p)?;
    Ok(solve_lyapunov(&a, &d)?)
}

/// Builds A and D, solves the steady state when it exists and measures the
/// magnon-magnon logarithmic negativity. Instability is a result, not an error.
pub fn compute_entanglement(p: &PhysicalParams) -> Result<EntanglementResult> {
    let (a, d) = normalized(p)?;
    let stability = is_hurwitz(&a);
    if !stability.is_hurwitz {
        return Ok(EntanglementResult {
            stable: false,
            nu_minus: None,
            log_negativity: None,
            stability,
        });
    }
    let v = match solve_lyapunov(&a, &d) {
        Ok(v) => v,
        Err(GaussianError::Unstable(stability)) => {
            return Ok(EntanglementResult {
                stable: false,
                nu_minus: None,
                log_negativity: None,
                stability,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let n = log_negativity(&two_mode_block(&v, MAGNON_1, MAGNON_2)?)?;
    Ok(EntanglementResult {
        stable: true,
        nu_minus: Some(n.nu_minus),
        log_negativity: Some(n.log_negativity),
        stability,
    })
}
