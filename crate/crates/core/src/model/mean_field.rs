//! Classical (noise-free) steady state of the driven system.
//!
//! With time derivatives set to zero the only nonlinearity is through the
//! magnon-1 population `n = |m1|^2`, which shifts its detuning by
//! `2 K n + G0 q` with `q = -G0 n / omega_b`. For fixed `n` the remaining
//! equations are real-linear in `(c, m1, m2)` (the PA term couples `c` to
//! `c*`), so each iteration is a 6x6 real solve.

use nalgebra::{Complex, Matrix6, Vector6};

use super::{DriveParams, ModelError, PhysicalParams, Result};

const RELAXATION: f64 = 0.5;
const MAX_ITERATIONS: usize = 100_000;
const RAMP_STEPS: usize = 100;
const RESIDUAL_TOL: f64 = 1e-10;
const BRANCH_SCAN_POINTS: usize = 4000;

/// Mean amplitudes in sqrt(quanta) units and the dimensionless mechanical
/// displacement. The momentum vanishes at the fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    pub amp_c: Complex<f64>,
    pub amp_m1: Complex<f64>,
    pub amp_m2: Complex<f64>,
    pub pos_q: f64,
}

impl MeanFieldState {
    fn zero() -> Self {
        let z = Complex::new(0.0, 0.0);
        Self {
            amp_c: z,
            amp_m1: z,
            amp_m2: z,
            pos_q: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldDiagnostics {
    pub iterations: usize,
    /// Largest stationarity residual relative to the drive strength.
    pub residual: f64,
    /// Whether the fixed point was reached by ramping the drive up from zero.
    pub used_continuation: bool,
    /// Number of self-consistent magnon-1 populations found by a scan.
    pub branches: usize,
    pub multistable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldSolution {
    pub state: MeanFieldState,
    pub diagnostics: MeanFieldDiagnostics,
}

/// `G_mb = sqrt(2) G0 |<m1>|`, with the phase of `<m1>` absorbed.
pub fn effective_coupling(state: &MeanFieldState, g0: f64) -> f64 {
    2f64.sqrt() * g0 * state.amp_m1.norm()
}

/// Linearized Kerr shift `2 K |<m1>|^2`.
pub fn kerr_shift_from_mean_field(state: &MeanFieldState, kerr_k: f64) -> f64 {
    2.0 * kerr_k * state.amp_m1.norm_sqr()
}

/// Residuals of the five stationarity equations (cavity, both magnons,
/// position and momentum), each divided by `max(|Omega|, tiny)`.
pub fn stationarity_residuals(p: &PhysicalParams, drive: &DriveParams, s: &MeanFieldState) -> [f64; 5] {
    let i = Complex::new(0.0, 1.0);
    let (c, m1, m2) = (s.amp_c, s.amp_m1, s.amp_m2);
    let g0 = drive.single_magnon_g0;
    let pa = Complex::from_polar(2.0 * p.g_pa, p.theta);
    let rc = -(i * p.delta_c + p.kappa_c) * c - i * (p.g_1 * m1 + p.g_2 * m2) + pa * c.conj();
    let r1 = -(i * p.delta_1 + p.kappa_1) * m1 - i * p.g_1 * c - i * g0 * m1 * s.pos_q + drive.rabi_omega
        - 2.0 * i * drive.kerr_k * m1.norm_sqr() * m1;
    let r2 = -(i * p.delta_2 + p.kappa_2) * m2 - i * p.g_2 * c;
    // momentum is zero at the fixed point, so dq/dt vanishes identically
    let rq = 0.0;
    let rp = p.omega_b * s.pos_q + g0 * m1.norm_sqr();
    let scale = drive.rabi_omega.abs().max(f64::MIN_POSITIVE);
    [
        rc.norm() / scale,
        r1.norm() / scale,
        r2.norm() / scale,
        rq,
        rp.abs() / scale,
    ]
}

fn max_residual(p: &PhysicalParams, drive: &DriveParams, s: &MeanFieldState) -> f64 {
    stationarity_residuals(p, drive, s).into_iter().fold(0.0, f64::max)
}

/// Acting on `z = (re, im)`: complex coefficient `a` times `z`.
fn put_linear(m: &mut Matrix6<f64>, row: usize, col: usize, a: Complex<f64>) {
    m[(row, col)] += a.re;
    m[(row, col + 1)] -= a.im;
    m[(row + 1, col)] += a.im;
    m[(row + 1, col + 1)] += a.re;
}

/// Acting on `z = (re, im)`: coefficient `b` times `conj(z)`.
fn put_conjugate(m: &mut Matrix6<f64>, row: usize, col: usize, b: Complex<f64>) {
    m[(row, col)] += b.re;
    m[(row, col + 1)] += b.im;
    m[(row + 1, col)] += b.im;
    m[(row + 1, col + 1)] -= b.re;
}

/// Solves the stationarity equations with the magnon-1 detuning shifted by
/// the population `n` and drive `omega`.
fn linear_response(p: &PhysicalParams, drive: &DriveParams, n: f64, omega: f64) -> Option<MeanFieldState> {
    let i = Complex::new(0.0, 1.0);
    let g0 = drive.single_magnon_g0;
    let q = -g0 * n / p.omega_b;
    let delta_1 = p.delta_1 + g0 * q + 2.0 * drive.kerr_k * n;

    let mut m = Matrix6::zeros();
    put_linear(&mut m, 0, 0, -(i * p.delta_c + p.kappa_c));
    put_conjugate(&mut m, 0, 0, Complex::from_polar(2.0 * p.g_pa, p.theta));
    put_linear(&mut m, 0, 2, -i * p.g_1);
    put_linear(&mut m, 0, 4, -i * p.g_2);
    put_linear(&mut m, 2, 2, -(i * delta_1 + p.kappa_1));
    put_linear(&mut m, 2, 0, -i * p.g_1);
    put_linear(&mut m, 4, 4, -(i * p.delta_2 + p.kappa_2));
    put_linear(&mut m, 4, 0, -i * p.g_2);
    let rhs = Vector6::new(0.0, 0.0, -omega, 0.0, 0.0, 0.0);
    let x = m.lu().solve(&rhs)?;
    let m1 = Complex::new(x[2], x[3]);
    Some(MeanFieldState {
        amp_c: Complex::new(x[0], x[1]),
        amp_m1: m1,
        amp_m2: Complex::new(x[4], x[5]),
        pos_q: -g0 * m1.norm_sqr() / p.omega_b,
    })
}

fn relax(old: &MeanFieldState, new: &MeanFieldState) -> MeanFieldState {
    let w = RELAXATION;
    MeanFieldState {
        amp_c: old.amp_c * (1.0 - w) + new.amp_c * w,
        amp_m1: old.amp_m1 * (1.0 - w) + new.amp_m1 * w,
        amp_m2: old.amp_m2 * (1.0 - w) + new.amp_m2 * w,
        pos_q: 0.0,
    }
}

/// Damped fixed-point iteration at drive `omega`, starting from `start`.
/// Returns the state and iteration count, or `None` on budget exhaustion.
fn iterate(
    p: &PhysicalParams,
    drive: &DriveParams,
    omega: f64,
    start: MeanFieldState,
    budget: usize,
) -> Option<(MeanFieldState, usize)> {
    let at_drive = DriveParams {
        rabi_omega: omega,
        ..*drive
    };
    let mut s = start;
    s.pos_q = -drive.single_magnon_g0 * s.amp_m1.norm_sqr() / p.omega_b;
    for it in 0..budget {
        if max_residual(p, &at_drive, &s) < RESIDUAL_TOL {
            return Some((s, it));
        }
        let next = linear_response(p, drive, s.amp_m1.norm_sqr(), omega)?;
        s = relax(&s, &next);
        s.pos_q = -drive.single_magnon_g0 * s.amp_m1.norm_sqr() / p.omega_b;
        if !s.amp_m1.norm().is_finite() {
            return None;
        }
    }
    None
}

/// Counts self-consistent populations `n = |m1(n)|^2` on a log-spaced scan.
fn count_branches(p: &PhysicalParams, drive: &DriveParams) -> usize {
    let omega = drive.rabi_omega;
    if omega == 0.0 || (drive.kerr_k == 0.0 && drive.single_magnon_g0 == 0.0) {
        return 1;
    }
    let kappa_min = p.kappa_c.min(p.kappa_1).min(p.kappa_2);
    let n_max = 16.0 * (omega / kappa_min).powi(2);
    let n_min = n_max * 1e-14;
    let ratio = (n_max / n_min).powf(1.0 / (BRANCH_SCAN_POINTS - 1) as f64);
    let f = |n: f64| linear_response(p, drive, n, omega).map(|s| s.amp_m1.norm_sqr() - n);
    let mut branches = 0;
    // f(0) = |m1(0)|^2 >= 0, so the scan starts from a nonnegative value
    let mut prev = f(0.0).unwrap_or(0.0);
    let mut n = n_min;
    for _ in 0..BRANCH_SCAN_POINTS {
        if let Some(v) = f(n) {
            if (prev > 0.0) != (v > 0.0) {
                branches += 1;
            }
            prev = v;
        }
        n *= ratio;
    }
    branches.max(1)
}

/// Fixed point of the mean-field equations.
///
/// Starts from the linear (`K = 0`, `G0 = 0`) solution and applies damped
/// fixed-point iteration. If that fails to converge, the drive is ramped up
/// from zero in small steps, which also selects the branch continuously
/// connected to the undriven state when several exist.
pub fn steady_state_mean_field(p: &PhysicalParams, drive: &DriveParams) -> Result<MeanFieldSolution> {
    p.validate()?;
    drive.validate()?;
    let omega = drive.rabi_omega;
    let branches = count_branches(p, drive);
    let diagnostics = |iterations, residual, used_continuation| MeanFieldDiagnostics {
        iterations,
        residual,
        used_continuation,
        branches,
        multistable: branches > 1,
    };
    if omega == 0.0 {
        return Ok(MeanFieldSolution {
            state: MeanFieldState::zero(),
            diagnostics: diagnostics(0, 0.0, false),
        });
    }

    let linear = DriveParams {
        kerr_k: 0.0,
        single_magnon_g0: 0.0,
        ..*drive
    };
    let guess = linear_response(p, &linear, 0.0, omega)
        .ok_or_else(|| ModelError::Convergence("singular linear mean-field system".into()))?;

    let direct = if branches > 1 {
        None
    } else {
        iterate(p, drive, omega, guess, MAX_ITERATIONS)
    };
    if let Some((state, iterations)) = direct {
        return Ok(MeanFieldSolution {
            state,
            diagnostics: diagnostics(iterations, max_residual(p, drive, &state), false),
        });
    }

    let mut state = MeanFieldState::zero();
    let mut total = 0;
    let per_step = MAX_ITERATIONS / RAMP_STEPS;
    for k in 1..=RAMP_STEPS {
        let w = omega * k as f64 / RAMP_STEPS as f64;
        let (s, it) = iterate(p, drive, w, state, per_step)
            .ok_or_else(|| ModelError::Convergence(format!("mean-field ramp stalled at step {k} of {RAMP_STEPS}")))?;
        state = s;
        total += it;
    }
    Ok(MeanFieldSolution {
        state,
        diagnostics: diagnostics(total, max_residual(p, drive, &state), true),
    })
}
