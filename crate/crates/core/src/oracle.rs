//! Brute-force reference dynamics for the dephasing qubit.
//!
//! The bath is discretized into `N` modes, each truncated to `fock_dim` levels; the full
//! composite `E₁σₓ ⊗ I + I ⊗ H_B + E₁σₓ ⊗ V_B` is evolved exactly and the bath traced out.
//! Composite indices are system-major with mode 0 the most significant bath digit.

use num_complex::Complex64;

use crate::channel::{build_composite, validate_density, SpectralPropagator, DENSITY_TOL};
use crate::dephasing::{
    check_beta, discrete_gamma, energy_gap_sq, evolve_with_gamma, qubit_energies, SpectralDensity,
};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{kron, pauli, CMatrix};

pub const DEFAULT_FOCK_DIM: usize = 5;
pub const DEFAULT_MODES: usize = 3;
/// Largest allowed composite dimension `2 · fock_dim^N`.
pub const DEFAULT_COMPOSITE_CAP: usize = 4096;
/// Thermal population outside the truncated Fock space above which a warning is raised.
pub const DEFAULT_TAIL_THRESHOLD: f64 = 1e-8;
/// `|c − 1|` above which a fitted decay constant is flagged as a convention mismatch.
pub const CONVENTION_FLAG_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    modes: Vec<BathMode>,
    fock_dim: usize,
}

impl DiscreteBath {
    pub fn new(modes: Vec<BathMode>, fock_dim: usize) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter("bath needs at least one mode".into()));
        }
        if fock_dim < 2 {
            return Err(Error::InvalidParameter(format!("fock_dim must be at least 2, got {fock_dim}")));
        }
        for (k, m) in modes.iter().enumerate() {
            if !(m.omega.is_finite() && m.omega > 0.0) || !m.g.is_finite() {
                return Err(Error::InvalidParameter(format!("mode {k}: omega {} g {}", m.omega, m.g)));
            }
            if modes[..k].iter().any(|o| o.omega == m.omega) {
                return Err(Error::InvalidParameter(format!("mode {k}: repeated frequency {}", m.omega)));
            }
        }
        Ok(Self { modes, fock_dim })
    }

    pub fn modes(&self) -> &[BathMode] {
        &self.modes
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    pub fn with_fock_dim(&self, fock_dim: usize) -> Result<Self> {
        Self::new(self.modes.clone(), fock_dim)
    }

    /// The same bath with every `g_n` multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.modes.iter().map(|m| BathMode { omega: m.omega, g: m.g * factor }).collect(), self.fock_dim)
    }

    /// `fock_dim^N`, or `None` on overflow.
    pub fn env_dim(&self) -> Option<usize> {
        u32::try_from(self.modes.len()).ok().and_then(|n| self.fock_dim.checked_pow(n))
    }

    fn checked_env_dim(&self, cap: usize) -> Result<usize> {
        match self.env_dim().and_then(|d| d.checked_mul(2)) {
            Some(total) if total <= cap => Ok(total / 2),
            Some(total) => Err(Error::DimensionCap { dim: total, cap }),
            None => Err(Error::DimensionCap { dim: usize::MAX, cap }),
        }
    }

    /// `γ_N(t)`.
    pub fn gamma(&self, beta: f64, t: f64) -> f64 {
        let pairs: Vec<(f64, f64)> = self.modes.iter().map(|m| (m.omega, m.g)).collect();
        discrete_gamma(&pairs, beta, t)
    }

    fn occupations(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let d = self.fock_dim;
        let n = self.modes.len();
        (0..n).map(move |k| (index / d.pow((n - 1 - k) as u32)) % d)
    }

    /// `H_B = Σ ω_n a_n† a_n` on the truncated space.
    pub fn hamiltonian(&self) -> Result<CMatrix> {
        let dim = self.checked_env_dim(usize::MAX)?;
        let diag: Vec<f64> = (0..dim)
            .map(|i| self.occupations(i).zip(&self.modes).map(|(n, m)| n as f64 * m.omega).sum())
            .collect();
        Ok(CMatrix::from_real_diag(&diag))
    }

    /// `V_B = Σ g_n (a_n + a_n†)` on the truncated space.
    pub fn coupling(&self) -> Result<CMatrix> {
        let dim = self.checked_env_dim(usize::MAX)?;
        let n = self.modes.len();
        let d = self.fock_dim;
        let mut v = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for (k, (occ, mode)) in self.occupations(i).zip(&self.modes).enumerate() {
                if occ + 1 < d {
                    let j = i + d.pow((n - 1 - k) as u32);
                    let amp = Complex64::new(mode.g * ((occ + 1) as f64).sqrt(), 0.0);
                    v[(i, j)] += amp;
                    v[(j, i)] += amp;
                }
            }
        }
        Ok(v)
    }
}

/// Midpoint discretization of `J` on `[0, omega_max]`: `ω_n = (n + ½)Δω`, `g_n = √(J(ω_n)Δω)`.
pub fn discretize_bath(spectral: &SpectralDensity, n: usize, omega_max: f64) -> Result<DiscreteBath> {
    if n == 0 {
        return Err(Error::InvalidParameter("number of modes must be at least 1".into()));
    }
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::InvalidParameter(format!("omega_max must be positive, got {omega_max}")));
    }
    let dw = omega_max / n as f64;
    let modes = (0..n)
        .map(|k| {
            let omega = (k as f64 + 0.5) * dw;
            BathMode { omega, g: (spectral.eval(omega) * dw).sqrt() }
        })
        .collect();
    DiscreteBath::new(modes, DEFAULT_FOCK_DIM)
}

/// Thermal population missing from a truncated bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationWarning {
    pub tail_population: f64,
    pub threshold: f64,
}

impl std::fmt::Display for TruncationWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Fock truncation drops thermal population {:.3e} (threshold {:.1e})",
            self.tail_population, self.threshold
        )
    }
}

#[derive(Debug, Clone)]
pub struct ThermalState {
    /// `exp(−βH_B)/Z` on the truncated space.
    pub omega: CMatrix,
    /// `1 − Π_n (1 − q_n^{fock_dim})` with `q_n = e^{−βω_n}`.
    pub tail_population: f64,
    pub warning: Option<TruncationWarning>,
}

pub fn thermal_state(bath: &DiscreteBath, beta: f64) -> Result<ThermalState> {
    thermal_state_with_threshold(bath, beta, DEFAULT_TAIL_THRESHOLD)
}

pub fn thermal_state_with_threshold(bath: &DiscreteBath, beta: f64, threshold: f64) -> Result<ThermalState> {
    check_beta(beta)?;
    let dim = bath.checked_env_dim(usize::MAX)?;
    let d = bath.fock_dim() as i32;
    // per-mode truncated geometric weights q^k (1 − q) / (1 − q^d)
    let weights: Vec<Vec<f64>> = bath
        .modes()
        .iter()
        .map(|m| {
            let q = (-beta * m.omega).exp();
            let raw: Vec<f64> = (0..d).map(|k| q.powi(k)).collect();
            let z: f64 = raw.iter().sum();
            raw.into_iter().map(|w| w / z).collect()
        })
        .collect();
    let diag: Vec<f64> = (0..dim)
        .map(|i| bath.occupations(i).zip(&weights).map(|(n, w)| w[n]).product())
        .collect();
    let kept: f64 = bath.modes().iter().map(|m| 1.0 - (-beta * m.omega * d as f64).exp()).product();
    let tail_population = (1.0 - kept).max(0.0);
    let warning = (tail_population > threshold).then(|| {
        let w = TruncationWarning { tail_population, threshold };
        log::warn!("{w}");
        w
    });
    Ok(ThermalState { omega: CMatrix::from_real_diag(&diag), tail_population, warning })
}

/// Reduced qubit states from exact evolution of the truncated composite.
#[derive(Debug, Clone)]
pub struct BruteForceRun {
    pub times: Vec<f64>,
    pub states: Vec<CMatrix>,
    pub tail_population: f64,
    pub warning: Option<TruncationWarning>,
}

pub fn brute_force_dynamics(
    alpha: f64,
    bath: &DiscreteBath,
    beta: f64,
    rho0: &CMatrix,
    times: &[f64],
) -> Result<BruteForceRun> {
    brute_force_dynamics_with_cap(alpha, bath, beta, rho0, times, DEFAULT_COMPOSITE_CAP)
}

pub fn brute_force_dynamics_with_cap(
    alpha: f64,
    bath: &DiscreteBath,
    beta: f64,
    rho0: &CMatrix,
    times: &[f64],
    cap: usize,
) -> Result<BruteForceRun> {
    let (e1, _) = qubit_energies(alpha)?;
    bath.checked_env_dim(cap)?;
    if rho0.shape() != (2, 2) {
        return Err(dim_mismatch("brute_force_dynamics", "2x2", format!("{}x{}", rho0.rows(), rho0.cols())));
    }
    validate_density(rho0, DENSITY_TOL)?;
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} is not finite")));
    }
    let thermal = thermal_state(bath, beta)?;
    let h_s = pauli::sigma_x().scale_real(e1);
    let model = build_composite(&h_s, &bath.hamiltonian()?, &h_s, &bath.coupling()?)?;
    let propagator = SpectralPropagator::new(&model)?;
    let joint = kron(rho0, &thermal.omega)?;
    let states = propagator.reduced_states(&joint, times)?;
    Ok(BruteForceRun {
        times: times.to_vec(),
        states,
        tail_population: thermal.tail_population,
        warning: thermal.warning,
    })
}

/// `⟨+|ϱ|−⟩`, the coherence between the `σₓ` eigenstates.
pub fn sigma_x_coherence(rho: &CMatrix) -> Complex64 {
    0.5 * (rho[(0, 0)] - rho[(0, 1)] + rho[(1, 0)] - rho[(1, 1)])
}

/// `|⟨+|ϱ(t)|−⟩| / |⟨+|ϱ(0)|−⟩|` for each state; 1 when the initial coherence vanishes.
pub fn coherence_decay(states: &[CMatrix]) -> Vec<f64> {
    let Some(first) = states.first() else { return Vec::new() };
    let c0 = sigma_x_coherence(first).norm();
    states
        .iter()
        .map(|s| if c0 < 1e-14 { 1.0 } else { sigma_x_coherence(s).norm() / c0 })
        .collect()
}

/// One qubit trajectory at a given `α`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub alpha: f64,
    pub times: Vec<f64>,
    pub states: Vec<CMatrix>,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub times: Vec<f64>,
    pub alphas: Vec<f64>,
    /// `E₁² γ_N(t)` per trajectory and time.
    pub exponent: Vec<Vec<f64>>,
    /// Coherence decay of the analytic side.
    pub d_analytic: Vec<Vec<f64>>,
    /// Coherence decay of the brute-force side.
    pub d_brute: Vec<Vec<f64>>,
    /// `|D_analytic − D_brute|`.
    pub d_deviation: Vec<Vec<f64>>,
    /// Largest entrywise `|ϱ_analytic − ϱ_brute|` per trajectory and time.
    pub entry_deviation: Vec<Vec<f64>>,
    pub max_abs_dev: f64,
    pub max_entry_dev: f64,
    /// Least-squares `c` in `−ln D_brute = c E₁² γ_N`; `None` when every exponent vanishes.
    pub fitted_c: Option<f64>,
    /// `max |D_brute − exp(−c E₁² γ_N)|` at the fitted `c`.
    pub fit_residual: f64,
    /// Fitted `c` differs from 1 by more than [`CONVENTION_FLAG_TOL`].
    pub convention_mismatch: bool,
    /// Fock-tail population of the brute-force bath, when known.
    pub tail_population: Option<f64>,
}

impl ComparisonReport {
    /// `max |D_brute − exp(−c E₁² γ_N)|` for a given constant.
    pub fn deviation_with_constant(&self, c: f64) -> f64 {
        self.d_brute
            .iter()
            .zip(&self.exponent)
            .flat_map(|(d, x)| d.iter().zip(x).map(move |(d, x)| (d - (-c * x).exp()).abs()))
            .fold(0.0, f64::max)
    }
}

/// Compares analytic and brute-force trajectories that share one discrete bath.
///
/// `gamma_n[i]` is `γ_N(times[i])`; every trajectory must use the same time grid.
pub fn compare(analytic: &[Trajectory], brute: &[Trajectory], gamma_n: &[f64]) -> Result<ComparisonReport> {
    if analytic.len() != brute.len() || analytic.is_empty() {
        return Err(Error::LengthMismatch(format!(
            "{} analytic vs {} brute-force trajectories",
            analytic.len(),
            brute.len()
        )));
    }
    let times = analytic[0].times.clone();
    for (a, b) in analytic.iter().zip(brute) {
        if a.alpha != b.alpha {
            return Err(Error::LengthMismatch(format!("alpha {} paired with alpha {}", a.alpha, b.alpha)));
        }
        for tr in [a, b] {
            if tr.times != times || tr.states.len() != times.len() {
                return Err(Error::LengthMismatch(format!(
                    "trajectory at alpha {} has {} states on {} times, expected {} times",
                    tr.alpha,
                    tr.states.len(),
                    tr.times.len(),
                    times.len()
                )));
            }
        }
    }
    if gamma_n.len() != times.len() {
        return Err(Error::LengthMismatch(format!("{} gamma values for {} times", gamma_n.len(), times.len())));
    }

    let alphas: Vec<f64> = analytic.iter().map(|a| a.alpha).collect();
    let exponent = alphas
        .iter()
        .map(|&a| Ok(gamma_n.iter().map(|g| energy_gap_sq(a).map(|e| e * g)).collect::<Result<Vec<_>>>()?))
        .collect::<Result<Vec<_>>>()?;
    let d_analytic: Vec<Vec<f64>> = analytic.iter().map(|a| coherence_decay(&a.states)).collect();
    let d_brute: Vec<Vec<f64>> = brute.iter().map(|b| coherence_decay(&b.states)).collect();
    let d_deviation: Vec<Vec<f64>> = d_analytic
        .iter()
        .zip(&d_brute)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect())
        .collect();
    let entry_deviation: Vec<Vec<f64>> = analytic
        .iter()
        .zip(brute)
        .map(|(a, b)| a.states.iter().zip(&b.states).map(|(x, y)| (x - y).max_abs()).collect())
        .collect();
    let max_of = |rows: &[Vec<f64>]| rows.iter().flatten().copied().fold(0.0, f64::max);

    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (xs, ds) in exponent.iter().zip(&d_brute) {
        for (&x, &d) in xs.iter().zip(ds) {
            if x > 0.0 && d > 0.0 {
                sxy += x * -d.ln();
                sxx += x * x;
            }
        }
    }
    let fitted_c = (sxx > 0.0).then(|| sxy / sxx);

    let mut report = ComparisonReport {
        max_abs_dev: max_of(&d_deviation),
        max_entry_dev: max_of(&entry_deviation),
        times,
        alphas,
        exponent,
        d_analytic,
        d_brute,
        d_deviation,
        entry_deviation,
        fitted_c,
        fit_residual: 0.0,
        convention_mismatch: fitted_c.is_some_and(|c| (c - 1.0).abs() > CONVENTION_FLAG_TOL),
        tail_population: None,
    };
    report.fit_residual = report.deviation_with_constant(fitted_c.unwrap_or(0.0));
    Ok(report)
}

/// Upper edge of the discretized spectrum used by default.
pub const DEFAULT_OMEGA_MAX: f64 = 20.0;
/// Decay constant `c` in `D = exp(−c E₁² γ_N)` observed for the `σₓ`-basis coherence of the
/// brute-force model; the exponent of the closed-form solution corresponds to `c = 1`.
pub const OBSERVED_DECAY_CONSTANT: f64 = 4.0;

/// Inputs for a full analytic-versus-brute-force comparison.
#[derive(Debug, Clone)]
pub struct OracleSetup {
    pub alphas: Vec<f64>,
    pub bath: DiscreteBath,
    /// Inverse temperature of the brute-force bath.
    pub beta: f64,
    /// Inverse temperature used for `γ_N` on the analytic side; normally equal to `beta`.
    pub analytic_beta: f64,
    pub rho0: CMatrix,
    pub times: Vec<f64>,
}

/// `[[1/2, −i/2], [i/2, 1/2]]`: maximal `σₓ`-basis coherence, consistent with the closed form.
pub fn default_initial_state() -> CMatrix {
    CMatrix::from_rows(&[
        [Complex64::new(0.5, 0.0), Complex64::new(0.0, -0.5)],
        [Complex64::new(0.0, 0.5), Complex64::new(0.5, 0.0)],
    ])
    .expect("2x2 literal")
}

pub fn run_comparison(setup: &OracleSetup) -> Result<ComparisonReport> {
    let gamma_n: Vec<f64> = setup.times.iter().map(|&t| setup.bath.gamma(setup.analytic_beta, t)).collect();
    let mut analytic = Vec::with_capacity(setup.alphas.len());
    let mut brute = Vec::with_capacity(setup.alphas.len());
    let mut tail: f64 = 0.0;
    for &alpha in &setup.alphas {
        let states = evolve_with_gamma(alpha, &setup.rho0, &setup.times, &gamma_n)?;
        analytic.push(Trajectory { alpha, times: setup.times.clone(), states });
        let run = brute_force_dynamics(alpha, &setup.bath, setup.beta, &setup.rho0, &setup.times)?;
        tail = tail.max(run.tail_population);
        brute.push(Trajectory { alpha, times: setup.times.clone(), states: run.states });
    }
    let mut report = compare(&analytic, &brute, &gamma_n)?;
    report.tail_population = Some(tail);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{propagator, reduced_state};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coherent_state() -> CMatrix {
        CMatrix::from_rows(&[[c(0.5, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.5, 0.0)]]).unwrap()
    }

    fn small_bath(fock_dim: usize) -> DiscreteBath {
        DiscreteBath::new(
            vec![BathMode { omega: 1.3, g: 0.25 }, BathMode { omega: 2.9, g: 0.15 }],
            fock_dim,
        )
        .unwrap()
    }

    #[test]
    fn midpoint_discretization() {
        let j = SpectralDensity::figure1();
        let bath = discretize_bath(&j, 1, 4.0).unwrap();
        assert_eq!(bath.modes().len(), 1);
        assert_eq!(bath.modes()[0].omega, 2.0);
        assert!((bath.modes()[0].g.powi(2) - j.eval(2.0) * 4.0).abs() < 1e-15);
        assert_eq!(bath.fock_dim(), DEFAULT_FOCK_DIM);

        let ohmic = SpectralDensity::new(1.0, 0.0, 1.0).unwrap();
        let b = discretize_bath(&ohmic, 4, 8.0).unwrap();
        let omegas: Vec<f64> = b.modes().iter().map(|m| m.omega).collect();
        assert_eq!(omegas, vec![1.0, 3.0, 5.0, 7.0]);
        assert!(discretize_bath(&ohmic, 0, 8.0).is_err());
        assert!(discretize_bath(&ohmic, 3, -1.0).is_err());
    }

    #[test]
    fn bath_operators() {
        let bath = small_bath(3);
        let h = bath.hamiltonian().unwrap();
        assert_eq!(h.shape(), (9, 9));
        // index 5 = (1, 2): 1.3 + 2 * 2.9
        assert!((h[(5, 5)].re - 7.1).abs() < 1e-15);
        let v = bath.coupling().unwrap();
        assert!(v.is_hermitian(0.0));
        // (0,0) -> (1,0) via mode 0; (0,0) -> (0,1) via mode 1
        assert_eq!(v[(0, 3)], c(0.25, 0.0));
        assert_eq!(v[(0, 1)], c(0.15, 0.0));
        assert!((v[(1, 2)].re - 0.15 * 2f64.sqrt()).abs() < 1e-15);
        assert!(DiscreteBath::new(vec![BathMode { omega: 1.0, g: 0.1 }; 2], 3).is_err());
        assert!(DiscreteBath::new(vec![BathMode { omega: 1.0, g: 0.1 }], 1).is_err());
    }

    #[test]
    fn thermal_examples() {
        let one = DiscreteBath::new(vec![BathMode { omega: 2f64.ln(), g: 0.0 }], 2).unwrap();
        let th = thermal_state_with_threshold(&one, 1.0, 1.0).unwrap();
        assert!((th.omega[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
        assert!((th.omega[(1, 1)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((th.tail_population - 0.25).abs() < 1e-15);

        let cold = thermal_state(&small_bath(4), f64::INFINITY).unwrap();
        assert_eq!(cold.omega[(0, 0)].re, 1.0);
        assert_eq!(cold.omega.trace().re, 1.0);
        assert!(cold.warning.is_none());

        let hot = thermal_state(&small_bath(4), 0.5).unwrap();
        assert!((hot.omega.trace().re - 1.0).abs() < 1e-14);
        let w = hot.warning.expect("hot bath in four levels is truncated");
        assert!(w.tail_population > 0.05);
    }

    #[test]
    fn composite_cap_enforced() {
        let bath = DiscreteBath::new(
            (1..=4).map(|k| BathMode { omega: k as f64, g: 0.1 }).collect(),
            7,
        )
        .unwrap();
        let r = brute_force_dynamics(0.5, &bath, 1.0, &coherent_state(), &[0.0]);
        assert!(matches!(r, Err(Error::DimensionCap { dim: 4802, cap: 4096 })));
    }

    #[test]
    fn brute_force_matches_reduced_state() {
        let bath = small_bath(4);
        let rho = coherent_state();
        let run = brute_force_dynamics(0.4, &bath, 2.0, &rho, &[0.0, 0.8, 3.0]).unwrap();
        let e1 = qubit_energies(0.4).unwrap().0;
        let hs = pauli::sigma_x().scale_real(e1);
        let model = build_composite(&hs, &bath.hamiltonian().unwrap(), &hs, &bath.coupling().unwrap()).unwrap();
        let omega = thermal_state(&bath, 2.0).unwrap().omega;
        for (s, &t) in run.states.iter().zip(&run.times) {
            assert!(s.dist(&reduced_state(&model, &rho, &omega, t).unwrap()) < 1e-10);
        }
        assert!(propagator(&model, 0.8).is_ok());
    }

    #[test]
    fn uncoupled_bath_gives_free_precession() {
        let bath = small_bath(3).scaled(0.0).unwrap();
        let rho = coherent_state();
        let times = [0.0, 0.5, 2.5];
        let run = brute_force_dynamics(0.6, &bath, 1.0, &rho, &times).unwrap();
        let hs = pauli::sigma_x().scale_real(-0.8);
        for (s, &t) in run.states.iter().zip(&times) {
            let u = crate::linalg::unitary_propagator(&hs, t).unwrap();
            assert!(s.dist(&(&(&u * &rho) * &u.adjoint())) < 1e-12);
        }
    }

    #[test]
    fn critical_point_freezes() {
        let rho = coherent_state();
        let run = brute_force_dynamics(1.0, &small_bath(3), 1.0, &rho, &[0.0, 1.0, 4.0]).unwrap();
        for s in &run.states {
            assert!(s.dist(&rho) < 1e-12);
        }
    }

    #[test]
    fn compare_identical_and_mismatched() {
        let rho = coherent_state();
        let bath = small_bath(4);
        let times = vec![0.0, 0.5, 1.0, 2.0];
        let run = brute_force_dynamics(0.3, &bath, 1.0, &rho, &times).unwrap();
        let tr = Trajectory { alpha: 0.3, times: times.clone(), states: run.states };
        let gamma: Vec<f64> = times.iter().map(|&t| bath.gamma(1.0, t)).collect();
        let report = compare(std::slice::from_ref(&tr), std::slice::from_ref(&tr), &gamma).unwrap();
        assert_eq!(report.max_abs_dev, 0.0);
        assert_eq!(report.max_entry_dev, 0.0);
        assert!(report.fitted_c.is_some());

        assert!(matches!(compare(&[tr.clone()], &[], &gamma), Err(Error::LengthMismatch(_))));
        assert!(matches!(compare(&[tr.clone()], &[tr.clone()], &gamma[..2]), Err(Error::LengthMismatch(_))));
    }

    #[test]
    fn decay_constant_is_four_for_a_weak_cold_bath() {
        // Nearly untruncated: one weakly coupled mode at low temperature.
        let bath = DiscreteBath::new(vec![BathMode { omega: 1.0, g: 0.1 }], 12).unwrap();
        let times: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
        let run = brute_force_dynamics(0.0, &bath, 4.0, &coherent_state(), &times).unwrap();
        let gamma: Vec<f64> = times.iter().map(|&t| bath.gamma(4.0, t)).collect();
        let tr = Trajectory { alpha: 0.0, times, states: run.states };
        let report = compare(std::slice::from_ref(&tr), std::slice::from_ref(&tr), &gamma).unwrap();
        let c = report.fitted_c.unwrap();
        assert!((c - 4.0).abs() < 1e-6, "c = {c}");
        assert!(report.convention_mismatch);
    }

    #[test]
    fn zero_coupling_comparison() {
        let bath = discretize_bath(&SpectralDensity::figure1(), 2, 6.0).unwrap().scaled(0.0).unwrap();
        let setup = OracleSetup {
            alphas: vec![0.0, 0.6],
            bath,
            beta: 0.5,
            analytic_beta: 0.5,
            rho0: default_initial_state(),
            times: vec![0.0, 1.0, 2.5],
        };
        let report = run_comparison(&setup).unwrap();
        assert!(report.max_abs_dev <= 1e-12);
        assert!(report.fitted_c.is_none());
        assert!(report.deviation_with_constant(OBSERVED_DECAY_CONSTANT) <= 1e-12);
    }
}
