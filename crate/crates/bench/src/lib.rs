//! Fixtures shared by the `ptdeco` benchmarks.

use num_complex::Complex64;
use ptdeco_core::dephasing::SpectralDensity;
use ptdeco_core::oracle::{discretize_bath, DiscreteBath, DEFAULT_OMEGA_MAX};
use ptdeco_core::CMatrix;

/// Deterministic non-normal test matrix with entries of order one.
pub fn test_matrix(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, k| {
        let x = (i * n + k) as f64;
        Complex64::new((0.7 * x).sin() / n as f64, (1.3 * x + 0.4).cos() / n as f64)
    })
}

/// Three-mode bath of the default oracle scenario at the given Fock cutoff.
pub fn oracle_bath(fock_dim: usize) -> DiscreteBath {
    discretize_bath(&SpectralDensity::figure1(), 3, DEFAULT_OMEGA_MAX)
        .and_then(|b| b.with_fock_dim(fock_dim))
        .expect("valid bath")
}
