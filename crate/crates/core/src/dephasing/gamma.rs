//! The bath function `γ(t) = ∫₀^∞ dω J(ω)/ω² (1 − cos ωt) coth(βω/2)`.

use std::f64::consts::PI;

use super::quadrature::integrate_panels;
use super::spectral::SpectralDensity;
use crate::error::{Error, Result};

/// Default absolute tolerance for `γ(t)`.
pub const DEFAULT_GAMMA_TOL: f64 = 1e-10;
/// Integrand evaluations allowed per `γ(t)` before giving up.
pub const MAX_EVALUATIONS: usize = 20_000_000;
const MAX_PANELS: f64 = 4096.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl GammaResult {
    pub const ZERO: Self = Self { value: 0.0, abs_error_estimate: 0.0, evaluations: 0 };
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    // β = ∞ (zero temperature) is allowed.
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

/// `(1 − cos ωt)/ω²`, written as `(t²/2) sinc²(ωt/2)` so it stays accurate as `ω → 0`.
#[inline]
pub(crate) fn one_minus_cos_over_sq(omega: f64, t: f64) -> f64 {
    let x = 0.5 * omega * t;
    let sinc = if x.abs() < 1e-4 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    0.5 * t * t * sinc * sinc
}

/// `ω coth(βω/2)`, finite at `ω = 0`.
#[inline]
pub(crate) fn omega_coth(omega: f64, beta: f64) -> f64 {
    if beta.is_infinite() {
        return omega;
    }
    let y = beta * omega;
    if y < 1e-4 {
        2.0 / beta + beta * omega * omega / 6.0
    } else {
        omega / (0.5 * y).tanh()
    }
}

/// `coth(x)` with `coth(∞) = 1`.
fn coth(x: f64) -> f64 {
    if x.is_infinite() {
        1.0
    } else {
        1.0 / x.tanh()
    }
}

/// Upper bound on `∫_W^∞` of the integrand, using `1 − cos ≤ 2`.
fn tail_bound(j: &SpectralDensity, beta: f64, w: f64) -> f64 {
    let (mu, wc) = (j.mu(), j.omega_c());
    let rate = 1.0 / wc - (mu - 1.0).max(0.0) / w;
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * j.j0() * coth(0.5 * beta * w) * w.powf(mu - 1.0) * (-w / wc).exp() / rate
}

/// `γ(t)` for a continuous spectral density, to absolute accuracy `tol`.
///
/// The integration range is cut where a rigorous tail bound drops below `tol/10`. Panels
/// follow the oscillation period `2π/t`; the first panel uses `ω = ω₁ x^p` with
/// `p = 1/(1+μ)` for `μ < 0`, which removes the `ω^μ` endpoint singularity.
pub fn gamma_for_bath(j: &SpectralDensity, beta: f64, t: f64, tol: f64) -> Result<GammaResult> {
    check_time(t)?;
    check_beta(beta)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if t == 0.0 || j.j0() == 0.0 {
        return Ok(GammaResult::ZERO);
    }
    let (j0, mu, wc) = (j.j0(), j.mu(), j.omega_c());

    let mut cutoff = wc * (1.0f64 / tol).ln().max(1.0);
    let mut tail = tail_bound(j, beta, cutoff);
    while tail > 0.1 * tol {
        cutoff *= 1.25;
        tail = tail_bound(j, beta, cutoff);
        if cutoff > 1e6 * wc {
            return Err(Error::QuadratureFailure { estimate: tail, tol, evaluations: 0 });
        }
    }

    let integrand = |w: f64| j0 * (-w / wc).exp() * w.powf(mu) * one_minus_cos_over_sq(w, t) * omega_coth(w, beta);

    let period = 2.0 * PI / t;
    let first = period.min(cutoff);
    let p = if mu < 0.0 { 1.0 / (1.0 + mu) } else { 1.0 };
    let power = p * (1.0 + mu) - 1.0;
    let jacobian_scale = j0 * first.powf(1.0 + mu) * p;
    let near_zero = |x: f64| {
        let w = first * x.powf(p);
        let xp = if power == 0.0 { 1.0 } else { x.powf(power) };
        jacobian_scale * xp * (-w / wc).exp() * one_minus_cos_over_sq(w, t) * omega_coth(w, beta)
    };

    let quad_tol = tol - tail;
    let head = integrate_panels(&near_zero, &[0.0, 1.0], 0.1 * quad_tol, MAX_EVALUATIONS / 10);

    let mut edges = vec![first];
    if cutoff > first {
        let n_periods = (cutoff - first) / period;
        let per_panel = (n_periods / MAX_PANELS).ceil().max(1.0);
        let width = per_panel * period;
        let n = ((cutoff - first) / width).ceil() as usize;
        edges.extend((1..n).map(|k| first + k as f64 * width));
        edges.push(cutoff);
    }
    let body = if edges.len() > 1 {
        integrate_panels(&integrand, &edges, 0.9 * quad_tol, MAX_EVALUATIONS)
    } else {
        super::quadrature::Integral { value: 0.0, error: 0.0, evaluations: 0, converged: true }
    };

    let evaluations = head.evaluations + body.evaluations;
    let error = head.error + body.error + tail;
    if !(head.converged && body.converged) || !(error <= tol) {
        return Err(Error::QuadratureFailure { estimate: error, tol, evaluations });
    }
    Ok(GammaResult { value: (head.value + body.value).max(0.0), abs_error_estimate: error, evaluations })
}

/// Discrete-bath `γ_N(t) = Σ g_n²/ω_n² (1 − cos ω_n t) coth(βω_n/2)`; `β = ∞` gives `coth = 1`.
pub fn discrete_gamma(modes: &[(f64, f64)], beta: f64, t: f64) -> f64 {
    modes
        .iter()
        .map(|&(w, g)| g * g * one_minus_cos_over_sq(w, t) * coth(0.5 * beta * w))
        .sum()
}
