//! Eigendecompositions: general (biorthonormal left/right pairs) and hermitian.

use faer::Side;
use num_complex::Complex64;

use super::matrix::{CMatrix, ZERO};
use crate::error::{Error, Result};

/// Overlap threshold `|⟨l̂_k|r_k⟩|` below which a matrix is treated as defective.
pub const NON_DIAGONALIZABLE_OVERLAP: f64 = 1e-8;

/// Eigenvalues with biorthonormal right (columns) and left (rows) eigenvectors.
#[derive(Debug, Clone)]
pub struct EigSystem {
    pub values: Vec<Complex64>,
    /// Right eigenvectors as columns; unit Euclidean norm, largest component real-positive.
    pub right: CMatrix,
    /// Left eigenvectors as rows, scaled so that `left · right = I`.
    pub left: CMatrix,
    /// Smallest `|⟨l̂_k|r_k⟩|` with both vectors unit-normalized (eigenvalue reciprocal condition).
    pub min_overlap: f64,
}

impl EigSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn right_vector(&self, k: usize) -> Vec<Complex64> {
        self.right.column(k)
    }

    /// `Σ_k λ_k |r_k⟩⟨l_k|`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let scaled = CMatrix::from_fn(n, n, |i, k| self.right[(i, k)] * self.values[k]);
        &scaled * &self.left
    }

    /// `‖L R − I‖_F`.
    pub fn biorthonormality_defect(&self) -> f64 {
        (&self.left * &self.right).dist(&CMatrix::identity(self.dim()))
    }
}

/// Scales `v` to unit norm with its first component of largest modulus real-positive.
pub(crate) fn fix_gauge(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Near-ties are resolved towards the lowest index so that output is reproducible.
    let pivot = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-10)).unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
}

/// Diagonalizes a general square matrix.
///
/// Eigenpairs are sorted by real part, then imaginary part. Left vectors are the rows of the
/// inverse of the right-vector matrix, so `⟨l_j|r_k⟩ = δ_jk`. A matrix whose normalized
/// left/right overlaps fall below [`NON_DIAGONALIZABLE_OVERLAP`] is reported as
/// [`Error::NonDiagonalizable`]; `tol` bounds the relative residual `‖A r − λ r‖ / ‖A‖`.
pub fn eig_general(a: &CMatrix, tol: f64) -> Result<EigSystem> {
    let n = a.ensure_square("eig_general")?;
    let evd = a.to_faer().eigen().map_err(|_| Error::EigenConvergence)?;
    let u = evd.U();
    let s = evd.S().column_vector();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re).then(s[i].im.total_cmp(&s[j].im)));

    let values: Vec<Complex64> = order.iter().map(|&k| s[k]).collect();
    let mut right = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut v: Vec<Complex64> = (0..n).map(|i| u[(i, src)]).collect();
        fix_gauge(&mut v);
        right.set_column(dst, &v);
    }

    let left = right
        .inverse()
        .map_err(|_| Error::NonDiagonalizable { min_overlap: 0.0 })?;
    let min_overlap = (0..n)
        .map(|k| 1.0 / left.row(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(f64::INFINITY, f64::min);
    if !(min_overlap >= NON_DIAGONALIZABLE_OVERLAP) {
        return Err(Error::NonDiagonalizable { min_overlap });
    }

    let scale = a.norm();
    for (k, &lambda) in values.iter().enumerate() {
        let r = right.column(k);
        let ar = a.mul_vec(&r);
        let resid = ar
            .iter()
            .zip(&r)
            .map(|(x, y)| (x - lambda * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if resid > tol * scale {
            return Err(Error::EigenConvergence);
        }
    }

    Ok(EigSystem { values, right, left, min_overlap })
}

/// Spectral decomposition `A = U diag(λ) U†` of a hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `U diag(f(λ)) U†`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let weights: Vec<Complex64> = self.values.iter().map(|&x| f(x)).collect();
        let scaled = CMatrix::from_fn(n, n, |i, k| self.vectors[(i, k)] * weights[k]);
        &scaled * &self.vectors.adjoint()
    }
}

/// Diagonalizes a matrix that is hermitian within `tol` (relative to its norm).
pub fn eig_hermitian(a: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    a.ensure_square("eig_hermitian")?;
    let defect = a.hermiticity_defect();
    if defect > tol * a.norm().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    let h = a.hermitian_part().to_faer();
    let evd = h.self_adjoint_eigen(Side::Lower).map_err(|_| Error::EigenConvergence)?;
    let s = evd.S().column_vector();
    let values: Vec<f64> = (0..s.nrows()).map(|i| s[i].re).collect();
    let vectors = CMatrix::from_faer(&evd.U().to_owned());
    Ok(HermitianEigen { values, vectors })
}

pub(crate) fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}
