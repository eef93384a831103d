//! Steady states of `dV/dt = AV + VA^T + D`.
//!
//! Two independent routes are kept on purpose. [`solve_lyapunov`] solves the
//! Kronecker-vectorized linear system `(I (x) A + A (x) I) vec V = -vec D`
//! directly; at the 8x8 scale this is a 64x64 dense LU. The integration
//! route propagates the covariance exactly over steps that double in length
//! (`V(2t) = V(t) + e^{At} V(t) e^{A^T t}`), starting from `V = 0`, until the
//! time derivative vanishes.

use nalgebra::DMatrix;

use super::{is_hurwitz, CovarianceMatrix, GaussianError, Result, SquareMatrix, Tolerances};

const MAX_DOUBLINGS: usize = 256;

/// `||AV + VA^T + D||_F / max(||D||_F, eps)`.
pub fn relative_residual(a: &DMatrix<f64>, v: &DMatrix<f64>, d: &DMatrix<f64>) -> f64 {
    let r = a * v + v * a.transpose() + d;
    r.norm() / d.norm().max(f64::EPSILON)
}

fn check_pair(a: &SquareMatrix, d: &SquareMatrix) -> Result<()> {
    if a.dim() != d.dim() {
        return Err(GaussianError::InvalidInput(format!(
            "drift is {0}x{0} but diffusion is {1}x{1}",
            a.dim(),
            d.dim()
        )));
    }
    let report = is_hurwitz(a);
    if !report.is_hurwitz {
        return Err(GaussianError::Unstable(report));
    }
    Ok(())
}

/// Direct Kronecker solve with default tolerances.
pub fn solve_lyapunov(a: &SquareMatrix, d: &SquareMatrix) -> Result<CovarianceMatrix> {
    solve_lyapunov_with(a, d, &Tolerances::default())
}

pub fn solve_lyapunov_with(a: &SquareMatrix, d: &SquareMatrix, tol: &Tolerances) -> Result<CovarianceMatrix> {
    check_pair(a, d)?;
    let n = a.dim();
    let am = a.as_matrix();
    let dm = d.as_matrix();
    let eye = DMatrix::<f64>::identity(n, n);
    let op = eye.kronecker(am) + am.kronecker(&eye);
    let lu = op.lu();

    // column-major vec
    let rhs = nalgebra::DVector::from_column_slice((-dm).as_slice());
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| GaussianError::InvalidInput("singular Lyapunov operator".into()))?;
    let mut v = DMatrix::from_column_slice(n, n, x.as_slice());

    // one step of iterative refinement on the same factorization
    let r = -(am * &v + &v * am.transpose() + dm);
    if let Some(dx) = lu.solve(&nalgebra::DVector::from_column_slice(r.as_slice())) {
        x += dx;
        v = DMatrix::from_column_slice(n, n, x.as_slice());
    }

    let v = CovarianceMatrix::from_symmetrized(v);
    let res = relative_residual(am, v.as_matrix(), dm);
    if res > tol.residual {
        return Err(GaussianError::Residual(res));
    }
    Ok(v)
}

/// Integrates `dV/dt = AV + VA^T + D` from `V = 0` until
/// `||dV/dt||_F / max(||D||_F, eps) < tol`.
///
/// The propagator over the first step `h = 1/(8 ||A||_F)` comes from Van
/// Loan's block exponential; every later step doubles the elapsed time, so
/// the stopping test is reached after a few dozen steps even for modes with
/// decay rates spanning many decades.
pub fn solve_lyapunov_by_integration(a: &SquareMatrix, d: &SquareMatrix, tol: f64) -> Result<CovarianceMatrix> {
    check_pair(a, d)?;
    let n = a.dim();
    let am = a.as_matrix();
    let dm = d.as_matrix();

    let h = 0.125 / am.norm().max(f64::MIN_POSITIVE);
    let mut block = DMatrix::<f64>::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&(-am * h));
    block.view_mut((0, n), (n, n)).copy_from(&(dm * h));
    block.view_mut((n, n), (n, n)).copy_from(&(am.transpose() * h));
    let e = block.exp();
    let f = e.view((n, n), (n, n)).into_owned();
    let g = e.view((0, n), (n, n)).into_owned();

    let mut phi = f.transpose();
    let mut v = &phi * g;
    v = (&v + v.transpose()) * 0.5;

    let mut last = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        last = relative_residual(am, &v, dm);
        if last < tol {
            return Ok(CovarianceMatrix::from_symmetrized(v));
        }
        v = &v + &phi * &v * phi.transpose();
        v = (&v + v.transpose()) * 0.5;
        phi = &phi * &phi;
    }
    Err(GaussianError::Convergence {
        steps: MAX_DOUBLINGS,
        last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_dist(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn negative_identity_gives_half_diffusion() {
        let a = SquareMatrix::new(-DMatrix::identity(8, 8)).unwrap();
        let d = SquareMatrix::identity(8);
        let v = solve_lyapunov(&a, &d).unwrap();
        assert!(rel_dist(v.as_matrix(), &(DMatrix::identity(8, 8) * 0.5)) < 1e-14);
        let w = solve_lyapunov_by_integration(&a, &d, 1e-12).unwrap();
        assert!(rel_dist(w.as_matrix(), &(DMatrix::identity(8, 8) * 0.5)) < 1e-11);
    }

    #[test]
    fn scalar_detailed_balance() {
        for &(kappa, nbar) in &[(0.3, 0.0), (2.0, 1.5), (1e3, 20.0)] {
            let a = SquareMatrix::from_rows(1, &[-kappa]).unwrap();
            let d = SquareMatrix::from_rows(1, &[kappa * (2.0 * nbar + 1.0)]).unwrap();
            let v = solve_lyapunov(&a, &d).unwrap();
            assert!((v.get(0, 0) - (2.0 * nbar + 1.0) / 2.0).abs() < 1e-12 * (2.0 * nbar + 1.0));
        }
    }

    #[test]
    fn zero_diffusion_gives_zero() {
        let a = SquareMatrix::from_rows(2, &[-1.0, 3.0, -3.0, -0.5]).unwrap();
        let d = SquareMatrix::new(DMatrix::zeros(2, 2)).unwrap();
        let w = solve_lyapunov_by_integration(&a, &d, 1e-12).unwrap();
        assert_eq!(w.as_matrix().norm(), 0.0);
        assert_eq!(solve_lyapunov(&a, &d).unwrap().as_matrix().norm(), 0.0);
    }

    #[test]
    fn unstable_drift_reports_spectrum() {
        let a = SquareMatrix::from_rows(2, &[0.5, 1.0, -1.0, 0.1]).unwrap();
        let d = SquareMatrix::identity(2);
        match solve_lyapunov(&a, &d) {
            Err(GaussianError::Unstable(r)) => {
                assert!(!r.is_hurwitz);
                assert_eq!(r.spectrum.len(), 2);
            }
            other => panic!("expected instability, got {other:?}"),
        }
        assert!(matches!(
            solve_lyapunov_by_integration(&a, &d, 1e-12),
            Err(GaussianError::Unstable(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let a = SquareMatrix::new(-DMatrix::identity(3, 3)).unwrap();
        let d = SquareMatrix::identity(2);
        assert!(matches!(solve_lyapunov(&a, &d), Err(GaussianError::InvalidInput(_))));
    }

    #[test]
    fn slow_mode_converges_by_integration() {
        // decay rates 1 and 1e-5 in one system
        let a = SquareMatrix::from_rows(2, &[-1.0, 0.0, 0.0, -1e-5]).unwrap();
        let d = SquareMatrix::from_diagonal(&[1.0, 1e-5]).unwrap();
        let w = solve_lyapunov_by_integration(&a, &d, 1e-12).unwrap();
        assert!((w.get(1, 1) - 0.5).abs() < 1e-9);
    }
}
