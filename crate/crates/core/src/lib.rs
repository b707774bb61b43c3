//! Simulation of PT-symmetric quantum systems under pure dephasing.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: dense complex kernels (eigensystems, matrix exponential, tensor products).
//! - [`pt`]: PT-symmetry checks, biorthonormal bases, charge conjugation and the canonical
//!   transformation `T` that maps a PT-symmetric Hamiltonian to a hermitian one.
//! - [`channel`]: composite system/environment dynamics, Kraus operators and their
//!   left/right counterparts in the PT representation.
//! - [`dephasing`]: the PT qubit coupled to a bosonic bath, decoherence function and sweeps.
//! - [`oracle`]: brute-force evolution of a discretized, Fock-truncated bath.
//!
//! Units: ħ = 1 throughout.

pub mod channel;
pub mod dephasing;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pt;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
