//! Dense complex linear algebra for small Hilbert spaces.
//!
//! All routines are pure functions of their inputs. Tolerances are relative to the
//! Frobenius norm of the operand unless stated otherwise.

mod eig;
mod expm;
mod matrix;
mod sqrt;
mod tensor;

pub use eig::{eig_general, eig_hermitian, EigSystem, HermitianEigen, NON_DIAGONALIZABLE_OVERLAP};
pub use expm::{mat_exp, unitary_propagator};
pub use matrix::CMatrix;
pub use sqrt::{mat_sqrt_psd, PsdSqrt};
pub use tensor::{kron, kron_with_cap, partial_trace_env, partial_trace_sys, DEFAULT_KRON_CAP};

pub(crate) use eig::dot_conj;

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Pauli matrices.
pub mod pauli {
    use super::CMatrix;
    use num_complex::Complex64;

    pub fn sigma_x() -> CMatrix {
        CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("valid literal")
    }

    pub fn sigma_y() -> CMatrix {
        let i = Complex64::new(0.0, 1.0);
        CMatrix::from_rows(&[[Complex64::new(0.0, 0.0), -i], [i, Complex64::new(0.0, 0.0)]])
            .expect("valid literal")
    }

    pub fn sigma_z() -> CMatrix {
        CMatrix::from_real_diag(&[1.0, -1.0])
    }
}
