//! Tensor products and partial traces.
//!
//! Composite indices are system-major: `index = s * dim_env + b`.

use num_complex::Complex64;

use super::matrix::{CMatrix, ZERO};
use crate::error::{dim_mismatch, Error, Result};

/// Default cap on the row (and column) count of a Kronecker product.
pub const DEFAULT_KRON_CAP: usize = 1 << 16;

/// Kronecker product `A ⊗ B` with the default dimension cap.
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    kron_with_cap(a, b, DEFAULT_KRON_CAP)
}

pub fn kron_with_cap(a: &CMatrix, b: &CMatrix, cap: usize) -> Result<CMatrix> {
    let rows = a.rows().checked_mul(b.rows());
    let cols = a.cols().checked_mul(b.cols());
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r <= cap && c <= cap => (r, c),
        _ => {
            return Err(Error::Overflow(format!(
                "kron of {}x{} and {}x{} exceeds dimension cap {cap}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )))
        }
    };
    let (br, bc) = b.shape();
    Ok(CMatrix::from_fn(rows, cols, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)]))
}

/// `Σ_b M[(s,b),(s',b)]`: traces out the environment factor of a system-major operator.
pub fn partial_trace_env(m: &CMatrix, dim_sys: usize, dim_env: usize) -> Result<CMatrix> {
    let n = dim_sys * dim_env;
    if dim_sys == 0 || dim_env == 0 || m.shape() != (n, n) {
        return Err(dim_mismatch(
            "partial_trace_env",
            format!("{n}x{n}"),
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(CMatrix::from_fn(dim_sys, dim_sys, |s, sp| {
        (0..dim_env).fold(ZERO, |acc: Complex64, b| acc + m[(s * dim_env + b, sp * dim_env + b)])
    }))
}

/// `Σ_s M[(s,b),(s,b')]`: traces out the system factor.
pub fn partial_trace_sys(m: &CMatrix, dim_sys: usize, dim_env: usize) -> Result<CMatrix> {
    let n = dim_sys * dim_env;
    if dim_sys == 0 || dim_env == 0 || m.shape() != (n, n) {
        return Err(dim_mismatch(
            "partial_trace_sys",
            format!("{n}x{n}"),
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(CMatrix::from_fn(dim_env, dim_env, |b, bp| {
        (0..dim_sys).fold(ZERO, |acc: Complex64, s| acc + m[(s * dim_env + b, s * dim_env + bp)])
    }))
}
