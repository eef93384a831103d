use nalgebra::Complex;

use super::SquareMatrix;

/// Eigenvalue summary of a drift matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub is_hurwitz: bool,
    pub max_real_part: f64,
    pub spectrum: Vec<Complex<f64>>,
}

/// Checks whether every eigenvalue of `a` has a strictly negative real part.
///
/// `SquareMatrix` already guarantees a square, finite input.
pub fn is_hurwitz(a: &SquareMatrix) -> StabilityReport {
    let spectrum: Vec<Complex<f64>> = a.as_matrix().complex_eigenvalues().iter().copied().collect();
    let max_real_part = spectrum.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    StabilityReport {
        is_hurwitz: max_real_part < 0.0,
        max_real_part,
        spectrum,
    }
}
