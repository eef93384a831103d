use nalgebra::{DMatrix, Matrix2, Matrix4};

use super::{GaussianError, Result, Tolerances};

/// Finite, square, real matrix. Used for both drift and diffusion matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix(DMatrix<f64>);

impl SquareMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(GaussianError::InvalidInput(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(GaussianError::InvalidInput("empty matrix".into()));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(GaussianError::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self(m))
    }

    /// Row-major constructor, mostly for tests and small literals.
    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(GaussianError::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(&self.0 * factor)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }
}

/// Symmetric quadrature covariance matrix.
///
/// Symmetry is enforced on construction; physicality (all symplectic
/// eigenvalues at least 1/2) is a property that can be queried, because
/// Lyapunov solutions of arbitrary drift/diffusion pairs need not be states.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::default().symmetry)
    }

    pub fn with_tolerance(m: DMatrix<f64>, symmetry_tol: f64) -> Result<Self> {
        let sq = SquareMatrix::new(m)?.into_matrix();
        let scale = sq.norm().max(f64::MIN_POSITIVE);
        let asym = (&sq - sq.transpose()).norm();
        if asym > symmetry_tol * scale {
            return Err(GaussianError::InvalidInput(format!(
                "covariance matrix not symmetric (relative asymmetry {:.3e})",
                asym / scale
            )));
        }
        Ok(Self(symmetrize(sq)))
    }

    /// Symmetrizes `m` without checking how asymmetric it was.
    pub(crate) fn from_symmetrized(m: DMatrix<f64>) -> Self {
        Self(symmetrize(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Number of bosonic modes; only meaningful for even dimensions.
    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    /// Symplectic eigenvalues in ascending order.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim();
        if !n.is_multiple_of(2) {
            return Err(GaussianError::InvalidInput(format!(
                "odd dimension {n} has no symplectic spectrum"
            )));
        }
        let omega_v = symplectic_form(n / 2) * &self.0;
        // eigenvalues of Omega V come in pairs +-i nu
        let mut im: Vec<f64> = omega_v.complex_eigenvalues().iter().map(|z| z.im.abs()).collect();
        im.sort_by(f64::total_cmp);
        Ok(im.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
    }

    /// True when every symplectic eigenvalue is at least `1/2 - slack`.
    pub fn is_physical(&self, slack: f64) -> Result<bool> {
        Ok(self.symplectic_eigenvalues()?.iter().all(|&nu| nu >= 0.5 - slack))
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// Block-diagonal symplectic form with `[[0, 1], [-1, 0]]` blocks.
pub fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// The 4x4 covariance matrix of a pair of modes, kept as its 2x2 blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeBlock {
    pub v1: Matrix2<f64>,
    pub v2: Matrix2<f64>,
    pub v12: Matrix2<f64>,
}

impl TwoModeBlock {
    pub fn new(v1: Matrix2<f64>, v2: Matrix2<f64>, v12: Matrix2<f64>) -> Result<Self> {
        for (name, b) in [("V1", &v1), ("V2", &v2)] {
            let scale = b.norm().max(f64::MIN_POSITIVE);
            if (b[(0, 1)] - b[(1, 0)]).abs() > Tolerances::default().symmetry * scale {
                return Err(GaussianError::InvalidInput(format!("{name} is not symmetric")));
            }
        }
        if [v1, v2, v12].iter().any(|b| b.iter().any(|v| !v.is_finite())) {
            return Err(GaussianError::InvalidInput("non-finite block entry".into()));
        }
        Ok(Self { v1, v2, v12 })
    }

    /// `V0 = [V1, V12; V12^T, V2]`.
    pub fn assemble(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.v1);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.v2);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.v12);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.v12.transpose());
        m
    }

    /// The same pair with the mode order exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            v1: self.v2,
            v2: self.v1,
            v12: self.v12.transpose(),
        }
    }
}
