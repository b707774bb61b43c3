//! PT-symmetric qubit under pure dephasing by a bosonic bath.
//!
//! In the hermitian representation the system is `h_S = E₁σₓ`, coupled through `E₁σₓ ⊗ V_B`
//! with `V_B = Σ g_n (a_n + a_n†)`. Coherences decay with the decoherence function
//! `D(t) = exp(−E₁² γ(t))`, which slows down as `|α| → 1` and freezes at the critical point.

mod gamma;
mod quadrature;
mod qubit;
mod spectral;
mod sweep;

pub use gamma::{discrete_gamma, gamma_for_bath, GammaResult, DEFAULT_GAMMA_TOL, MAX_EVALUATIONS};
pub use qubit::{
    decoherence_from_gamma, decoherence_function, evolve_exact, evolve_trajectory, evolve_with_gamma, ohmic_asymptote,
    qubit_energies, qubit_hamiltonian, qubit_transform, INITIAL_STATE_TOL,
};
pub use spectral::SpectralDensity;
pub use sweep::{gamma_grid, sweep_alpha, SweepTable};

pub(crate) use gamma::check_beta;
pub(crate) use qubit::energy_gap_sq;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingModel {
    pub alpha: f64,
    /// Inverse temperature; `f64::INFINITY` is the zero-temperature bath.
    pub beta: f64,
    pub spectral: SpectralDensity,
}

impl DephasingModel {
    pub fn new(alpha: f64, beta: f64, spectral: SpectralDensity) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
        }
        check_beta(beta)?;
        Ok(Self { alpha, beta, spectral })
    }

    pub fn is_unbroken(&self) -> bool {
        self.alpha.abs() <= 1.0
    }

    /// `E₁ = −√(1 − α²)`.
    pub fn e1(&self) -> Result<f64> {
        Ok(qubit_energies(self.alpha)?.0)
    }
}

/// `γ(t)` for the model's bath.
pub fn gamma_integral(model: &DephasingModel, t: f64, tol: f64) -> Result<GammaResult> {
    gamma_for_bath(&model.spectral, model.beta, t, tol)
}
