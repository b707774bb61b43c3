use rayon::prelude::*;

use super::gamma::{check_beta, gamma_for_bath, GammaResult};
use super::qubit::{decoherence_from_gamma, energy_gap_sq};
use super::spectral::SpectralDensity;
use crate::error::{Error, Result};

/// `D(t; α)` on a grid; `values[i][k]` belongs to `times[i]` and `alphas[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub alphas: Vec<f64>,
    pub times: Vec<f64>,
    /// `γ(t)` per time; shared by every α.
    pub gamma: Vec<GammaResult>,
    pub values: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[k]).collect()
    }
}

pub(crate) fn check_time_grid(times: &[f64]) -> Result<()> {
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidParameter(format!("time {t} must be finite and nonnegative")));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("times must be strictly ascending".into()));
    }
    Ok(())
}

/// `γ(t)` for each time, evaluated in parallel.
pub fn gamma_grid(spectral: &SpectralDensity, beta: f64, times: &[f64], tol: f64) -> Result<Vec<GammaResult>> {
    check_beta(beta)?;
    times.par_iter().map(|&t| gamma_for_bath(spectral, beta, t, tol)).collect()
}

/// Decoherence function for every `(t, α)` pair; `γ(t)` is computed once per time.
pub fn sweep_alpha(
    alphas: &[f64],
    times: &[f64],
    spectral: &SpectralDensity,
    beta: f64,
    tol: f64,
) -> Result<SweepTable> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("empty alpha grid".into()));
    }
    let gaps = alphas.iter().map(|&a| energy_gap_sq(a)).collect::<Result<Vec<_>>>()?;
    check_time_grid(times)?;
    let gamma = if gaps.iter().all(|&g| g == 0.0) {
        check_beta(beta)?;
        vec![GammaResult::ZERO; times.len()]
    } else {
        gamma_grid(spectral, beta, times, tol)?
    };
    let values = gamma
        .iter()
        .map(|g| alphas.iter().map(|&a| decoherence_from_gamma(a, g.value)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { alphas: alphas.to_vec(), times: times.to_vec(), gamma, values })
}
