//! The PT-symmetric qubit `H = [[iα, 1], [1, −iα]]` with parity `σₓ`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::gamma::{gamma_for_bath, GammaResult};
use super::DephasingModel;
use crate::channel::{validate_density, DENSITY_TOL};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{pauli, CMatrix};
use crate::pt::{CanonicalMap, PtHamiltonian, DEFAULT_CONDITION_CAP};

/// Largest allowed deviation of the closed-form solution at `t = 0` from the initial state.
pub const INITIAL_STATE_TOL: f64 = 1e-9;

pub fn qubit_hamiltonian(alpha: f64) -> PtHamiltonian {
    let h = CMatrix::from_rows(&[
        [Complex64::new(0.0, alpha), Complex64::new(1.0, 0.0)],
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, -alpha)],
    ])
    .expect("2x2 literal");
    PtHamiltonian::new(h, pauli::sigma_x()).expect("σₓ is a valid parity")
}

/// `(E₁, E₂) = (−√(1−α²), +√(1−α²))`.
pub fn qubit_energies(alpha: f64) -> Result<(f64, f64)> {
    let e = energy_gap_sq(alpha)?.sqrt();
    Ok((-e, e))
}

/// `E₁² = 1 − α²`, computed as `(1−α)(1+α)`.
pub(crate) fn energy_gap_sq(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
    }
    if alpha.abs() > 1.0 {
        return Err(Error::BrokenPhase);
    }
    Ok(((1.0 - alpha) * (1.0 + alpha)).max(0.0))
}

/// Closed-form `T = U† diag(s₁, s₂) U` with `s₁,₂ = √(2(1 ± α))`.
///
/// This is not normalized to `det T = 1`; it agrees with [`crate::pt::canonical_transform`]
/// up to the positive factor `√(s₁s₂)`.
pub fn qubit_transform(alpha: f64) -> Result<CanonicalMap> {
    let gap = energy_gap_sq(alpha)?;
    if gap == 0.0 {
        return Err(Error::ExceptionalPoint);
    }
    let s1 = (2.0 * (1.0 + alpha)).sqrt();
    let s2 = (2.0 * (1.0 - alpha)).sqrt();
    let condition = s1.max(s2) / s1.min(s2);
    if !(condition <= DEFAULT_CONDITION_CAP) {
        return Err(Error::IllConditioned { condition, cap: DEFAULT_CONDITION_CAP });
    }
    let build = |a: f64, b: f64| {
        let (sum, diff) = (0.5 * (a + b), 0.5 * (a - b));
        CMatrix::from_rows(&[
            [Complex64::new(sum, 0.0), Complex64::new(0.0, -diff)],
            [Complex64::new(0.0, diff), Complex64::new(sum, 0.0)],
        ])
        .expect("2x2 literal")
    };
    Ok(CanonicalMap { t: build(s1, s2), t_inv: build(1.0 / s1, 1.0 / s2), condition })
}

/// `D = exp(−E₁² γ)`; identically 1 at `|α| = 1`.
pub fn decoherence_from_gamma(alpha: f64, gamma: f64) -> Result<f64> {
    let gap = energy_gap_sq(alpha)?;
    if gap == 0.0 {
        return Ok(1.0);
    }
    Ok((-gap * gamma).exp())
}

/// `D(t) = exp(−E₁² γ(t))`.
pub fn decoherence_function(model: &DephasingModel, t: f64, tol: f64) -> Result<f64> {
    if energy_gap_sq(model.alpha)? == 0.0 {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be finite and nonnegative, got {t}")));
        }
        return Ok(1.0);
    }
    let gamma = gamma_for_bath(&model.spectral, model.beta, t, tol)?;
    decoherence_from_gamma(model.alpha, gamma.value)
}

/// Long-time Ohmic form `exp(−π J0 (1 − α²) t / β)`.
pub fn ohmic_asymptote(alpha: f64, j0: f64, beta: f64, t: f64) -> f64 {
    (-std::f64::consts::PI * j0 * (1.0 - alpha) * (1.0 + alpha) * t / beta).exp()
}

fn closed_form(e1: f64, rho0: &CMatrix, t: f64, d: f64) -> CMatrix {
    let z = rho0[(0, 1)] * Complex64::from_polar(1.0, -e1 * t);
    let r11 = 0.5 - z.re * d;
    let r12 = Complex64::new(rho0[(0, 0)].re - 0.5, z.im * d);
    CMatrix::from_rows(&[[Complex64::new(r11, 0.0), r12], [r12.conj(), Complex64::new(1.0 - r11, 0.0)]])
        .expect("2x2 literal")
}

fn check_initial_state(e1: f64, rho0: &CMatrix) -> Result<()> {
    if rho0.shape() != (2, 2) {
        return Err(dim_mismatch("evolve_exact", "2x2", format!("{}x{}", rho0.rows(), rho0.cols())));
    }
    validate_density(rho0, DENSITY_TOL)?;
    let deviation = closed_form(e1, rho0, 0.0, 1.0).dist(rho0);
    if deviation > INITIAL_STATE_TOL {
        return Err(Error::InconsistentInitialState { deviation });
    }
    Ok(())
}

/// Closed-form reduced state in the hermitian representation `h_S = E₁σₓ`.
///
/// `ϱ₁₁(t) = 1/2 − Re[ϱ₁₂(0)e^{−iE₁t}] D(t)`,
/// `ϱ₁₂(t) = ϱ₁₁(0) − 1/2 + i Im[ϱ₁₂(0)e^{−iE₁t}] D(t)`.
/// At `t = 0` these reproduce `ϱ(0)` only when `ϱ₁₁(0) = 1/2` and `Re ϱ₁₂(0) = 0`; other
/// initial states are rejected with [`Error::InconsistentInitialState`].
pub fn evolve_exact(model: &DephasingModel, rho0: &CMatrix, t: f64, tol: f64) -> Result<CMatrix> {
    let (e1, _) = qubit_energies(model.alpha)?;
    check_initial_state(e1, rho0)?;
    let d = decoherence_function(model, t, tol)?;
    Ok(closed_form(e1, rho0, t, d))
}

/// [`evolve_exact`] on a time grid, with `γ(t)` evaluated in parallel.
pub fn evolve_trajectory(model: &DephasingModel, rho0: &CMatrix, times: &[f64], tol: f64) -> Result<Vec<CMatrix>> {
    let (e1, _) = qubit_energies(model.alpha)?;
    check_initial_state(e1, rho0)?;
    let critical = e1 == 0.0;
    let gammas: Vec<GammaResult> = times
        .par_iter()
        .map(|&t| {
            if critical {
                Ok(GammaResult::ZERO)
            } else {
                gamma_for_bath(&model.spectral, model.beta, t, tol)
            }
        })
        .collect::<Result<_>>()?;
    times
        .iter()
        .zip(&gammas)
        .map(|(&t, g)| Ok(closed_form(e1, rho0, t, decoherence_from_gamma(model.alpha, g.value)?)))
        .collect()
}

/// Closed-form trajectory with externally supplied `γ` values, e.g. a discrete-bath `γ_N`.
pub fn evolve_with_gamma(alpha: f64, rho0: &CMatrix, times: &[f64], gammas: &[f64]) -> Result<Vec<CMatrix>> {
    if times.len() != gammas.len() {
        return Err(Error::LengthMismatch(format!("{} gamma values for {} times", gammas.len(), times.len())));
    }
    let (e1, _) = qubit_energies(alpha)?;
    check_initial_state(e1, rho0)?;
    times
        .iter()
        .zip(gammas)
        .map(|(&t, &g)| Ok(closed_form(e1, rho0, t, decoherence_from_gamma(alpha, g)?)))
        .collect()
}
