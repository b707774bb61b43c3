use super::eig::{eig_hermitian, HermitianEigen};
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Principal square root of a positive-semidefinite hermitian matrix, kept in factored form.
#[derive(Debug, Clone)]
pub struct PsdSqrt {
    /// Orthonormal eigenvectors of the input (columns).
    pub vectors: CMatrix,
    /// Square roots of the clamped eigenvalues, ascending.
    pub roots: Vec<f64>,
}

impl PsdSqrt {
    pub fn new(a: &CMatrix, tol: f64) -> Result<Self> {
        let HermitianEigen { values, vectors } = eig_hermitian(a, tol)?;
        let scale = a.norm().max(1.0);
        if let Some(&lowest) = values.first() {
            if lowest < -tol * scale {
                return Err(Error::NegativeEigenvalue { value: lowest });
            }
        }
        let roots = values
            .iter()
            .map(|&x| if x < tol * scale { 0.0 } else { x.sqrt() })
            .collect();
        Ok(Self { vectors, roots })
    }

    /// `U diag(f(√λ)) U†`, hermitized.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.roots.len();
        let weights: Vec<f64> = self.roots.iter().map(|&s| f(s)).collect();
        let scaled = CMatrix::from_fn(n, n, |i, k| self.vectors[(i, k)] * weights[k]);
        (&scaled * &self.vectors.adjoint()).hermitian_part()
    }

    pub fn sqrt(&self) -> CMatrix {
        self.assemble(|s| s)
    }
}

/// Hermitian square root `S` with `S·S = A` of a hermitian PSD matrix; eigenvalues below
/// `tol` (relative) are clamped to zero.
pub fn mat_sqrt_psd(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    Ok(PsdSqrt::new(a, tol)?.sqrt())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_TOL;

    #[test]
    fn diagonal_and_identity() {
        let s = mat_sqrt_psd(&CMatrix::from_real_diag(&[4.0, 9.0]), DEFAULT_TOL).unwrap();
        assert!(s.dist(&CMatrix::from_real_diag(&[2.0, 3.0])) < 1e-14);
        let i = mat_sqrt_psd(&CMatrix::identity(3), DEFAULT_TOL).unwrap();
        assert!(i.dist(&CMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        assert!(matches!(
            mat_sqrt_psd(&CMatrix::from_real_diag(&[1.0, -0.5]), DEFAULT_TOL),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn tiny_negative_eigenvalue_clamped() {
        let s = mat_sqrt_psd(&CMatrix::from_real_diag(&[1.0, -1e-13]), DEFAULT_TOL).unwrap();
        assert!(s.dist(&CMatrix::from_real_diag(&[1.0, 0.0])) < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = CMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(mat_sqrt_psd(&a, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
    }
}
