//! PT-symmetric Hamiltonians and their hermitian representation.
//!
//! For a Hamiltonian `H` with real, non-degenerate spectrum the right eigenvectors `|ψ_n⟩`
//! and dual vectors `|φ_n⟩` form a biorthonormal basis. The positive map
//! `T = sqrt(Σ_n |φ_n⟩⟨φ_n|)` satisfies `T² H T⁻² = H†`, so `h = T H T⁻¹` is hermitian.
//! Time reversal acts as entrywise complex conjugation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{dot_conj, eig_general, CMatrix, PsdSqrt, DEFAULT_TOL};

/// Relative threshold on `max |Im λ| / ‖H‖` for calling a spectrum real.
pub const DEFAULT_SPECTRAL_EPS: f64 = 1e-9;
/// Largest accepted ratio of extreme eigenvalues of `T`.
pub const DEFAULT_CONDITION_CAP: f64 = 1e8;
/// Tolerance for snapping `θ_n` onto `{0, π}`.
pub const THETA_SNAP_TOL: f64 = 1e-6;
/// Relative gap below which two energies count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// A square Hamiltonian together with its parity operator.
#[derive(Debug, Clone)]
pub struct PtHamiltonian {
    h: CMatrix,
    parity: CMatrix,
}

impl PtHamiltonian {
    /// Validates that `parity` is a hermitian involution of matching dimension.
    pub fn new(h: CMatrix, parity: CMatrix) -> Result<Self> {
        let n = h.ensure_square("PtHamiltonian::new")?;
        if parity.shape() != (n, n) {
            return Err(dim_mismatch(
                "PtHamiltonian::new (parity)",
                format!("{n}x{n}"),
                format!("{}x{}", parity.rows(), parity.cols()),
            ));
        }
        if !parity.is_hermitian(DEFAULT_TOL) {
            return Err(Error::InvalidParity("not hermitian".into()));
        }
        if (&parity * &parity).dist(&CMatrix::identity(n)) > DEFAULT_TOL * (n as f64).sqrt() {
            return Err(Error::InvalidParity("P² ≠ I".into()));
        }
        Ok(Self { h, parity })
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    pub fn parity(&self) -> &CMatrix {
        &self.parity
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }
}

/// True iff `P H P = H†` and `conj(H) = H†` both hold within `tol · ‖H‖`.
pub fn check_pt_symmetry(ham: &PtHamiltonian, tol: f64) -> bool {
    let h = ham.h();
    let p = ham.parity();
    let adj = h.adjoint();
    let bound = tol * h.norm();
    let parity_ok = (&(p * h) * p).dist(&adj) <= bound;
    let time_reversal_ok = h.conj().dist(&adj) <= bound;
    parity_ok && time_reversal_ok
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralPhase {
    /// Entirely real spectrum (unbroken PT symmetry).
    Real,
    /// Complex-conjugate pairs present (broken PT symmetry).
    ComplexPairs,
    /// Eigenvectors coalesce; the matrix is not diagonalizable.
    ExceptionalPoint,
}

impl std::fmt::Display for SpectralPhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpectralPhase::Real => "Real",
            SpectralPhase::ComplexPairs => "ComplexPairs",
            SpectralPhase::ExceptionalPoint => "ExceptionalPoint",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub phase: SpectralPhase,
}

/// Eigenvalues and phase classification; `eps_spec` is relative to `‖H‖`.
///
/// At an exceptional point the eigenvalues are still reported (from the Schur form),
/// even though no eigenbasis exists.
pub fn spectrum(ham: &PtHamiltonian, eps_spec: f64) -> SpectrumReport {
    let h = ham.h();
    match eig_general(h, DEFAULT_TOL) {
        Ok(sys) => {
            let max_im = sys.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let phase = if max_im <= eps_spec * h.norm() {
                SpectralPhase::Real
            } else {
                SpectralPhase::ComplexPairs
            };
            SpectrumReport { eigenvalues: sys.values, phase }
        }
        Err(_) => {
            let mut eigenvalues = h.to_faer().eigenvalues().unwrap_or_default();
            eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            SpectrumReport { eigenvalues, phase: SpectralPhase::ExceptionalPoint }
        }
    }
}

/// Biorthonormal eigenbasis of a PT-symmetric Hamiltonian with real spectrum.
///
/// Normalization: `⟨φ_n|ψ_m⟩ = δ_nm` and `P|ψ_n⟩ = e^{iθ_n}|φ_n⟩` with `θ_n ∈ {0, π}`.
/// The second condition fixes `|⟨ψ_n|P|ψ_n⟩| = 1`; the phase of each pair follows the
/// eigenvector gauge of [`eig_general`].
#[derive(Debug, Clone)]
pub struct BiorthoSystem {
    /// Ascending real energies.
    pub energies: Vec<f64>,
    /// Right eigenvectors `|ψ_n⟩` as columns.
    pub psi: CMatrix,
    /// Dual vectors `|φ_n⟩` as columns (eigenvectors of `H†`).
    pub phi: CMatrix,
    pub theta: Vec<f64>,
}

impl BiorthoSystem {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `‖Φ†Ψ − I‖`.
    pub fn biorthonormality_defect(&self) -> f64 {
        (&self.phi.adjoint() * &self.psi).dist(&CMatrix::identity(self.dim()))
    }

    /// `‖Σ_n |ψ_n⟩⟨φ_n| − I‖`.
    pub fn completeness_defect(&self) -> f64 {
        (&self.psi * &self.phi.adjoint()).dist(&CMatrix::identity(self.dim()))
    }

    /// `max_n ‖P|ψ_n⟩ − e^{iθ_n}|φ_n⟩‖`.
    pub fn parity_defect(&self, parity: &CMatrix) -> f64 {
        let p_psi = parity * &self.psi;
        (0..self.dim())
            .map(|n| {
                let phase = Complex64::from_polar(1.0, self.theta[n]);
                (0..self.dim())
                    .map(|i| (p_psi[(i, n)] - phase * self.phi[(i, n)]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `Σ_n E_n |ψ_n⟩⟨φ_n|`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let scaled = CMatrix::from_fn(n, n, |i, k| self.psi[(i, k)] * self.energies[k]);
        &scaled * &self.phi.adjoint()
    }
}

/// Builds the biorthonormal basis; requires a real, non-degenerate spectrum.
pub fn biorthonormal_basis(ham: &PtHamiltonian, tol: f64) -> Result<BiorthoSystem> {
    let h = ham.h();
    let p = ham.parity();
    let n = ham.dim();
    let sys = eig_general(h, tol).map_err(|e| match e {
        Error::NonDiagonalizable { .. } => Error::ExceptionalPoint,
        other => other,
    })?;

    let scale = h.norm();
    let max_im = sys.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_im > DEFAULT_SPECTRAL_EPS * scale {
        return Err(Error::BrokenPhase);
    }
    let energies: Vec<f64> = sys.values.iter().map(|z| z.re).collect();
    for w in energies.windows(2) {
        if w[1] - w[0] <= DEGENERACY_TOL * scale.max(1.0) {
            return Err(Error::DegenerateSpectrum { first: w[0], second: w[1] });
        }
    }

    let mut psi = sys.right.clone();
    let mut phi = CMatrix::zeros(n, n);
    let mut theta = Vec::with_capacity(n);
    for k in 0..n {
        let mut r = sys.right.column(k);
        let mut dual: Vec<Complex64> = sys.left.row(k).iter().map(|z| z.conj()).collect();
        // ⟨ψ|P|ψ⟩ is real for hermitian P and fixes |ψ| up to the biorthonormal rescaling.
        let pt_norm = dot_conj(&r, &p.mul_vec(&r)).re;
        if pt_norm.abs() <= f64::EPSILON * scale.max(1.0) {
            return Err(Error::NotPtSymmetric { residual: f64::INFINITY });
        }
        let w = pt_norm.abs().sqrt();
        r.iter_mut().for_each(|z| *z /= w);
        dual.iter_mut().for_each(|z| *z *= w);

        let raw = dot_conj(&dual, &p.mul_vec(&r)).arg();
        let snapped = if raw.abs() <= THETA_SNAP_TOL {
            0.0
        } else if (raw.abs() - PI).abs() <= THETA_SNAP_TOL {
            PI
        } else {
            return Err(Error::PhaseNotQuantized { index: k, theta: raw });
        };
        psi.set_column(k, &r);
        phi.set_column(k, &dual);
        theta.push(snapped);
    }

    let basis = BiorthoSystem { energies, psi, phi, theta };
    let residual = basis.parity_defect(p);
    let phi_scale = basis.phi.norm() / (n as f64).sqrt();
    if residual > tol.sqrt() * phi_scale.max(1.0) {
        return Err(Error::NotPtSymmetric { residual });
    }
    Ok(basis)
}

/// `C = Σ_n |ψ_n⟩⟨ψ_n| P`.
pub fn charge_conjugation(basis: &BiorthoSystem, parity: &CMatrix) -> Result<CMatrix> {
    let n = basis.dim();
    if parity.shape() != (n, n) {
        return Err(dim_mismatch(
            "charge_conjugation",
            format!("{n}x{n}"),
            format!("{}x{}", parity.rows(), parity.cols()),
        ));
    }
    Ok(&(&basis.psi * &basis.psi.adjoint()) * parity)
}

/// Hermitian positive-definite similarity map with `T H T⁻¹` hermitian, normalized to `det T = 1`.
#[derive(Debug, Clone)]
pub struct CanonicalMap {
    pub t: CMatrix,
    pub t_inv: CMatrix,
    /// Ratio of the largest to the smallest eigenvalue of `T`.
    pub condition: f64,
}

impl CanonicalMap {
    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// `T A T⁻¹`.
    pub fn forward(&self, a: &CMatrix) -> CMatrix {
        &(&self.t * a) * &self.t_inv
    }

    /// `T⁻¹ A T`.
    pub fn backward(&self, a: &CMatrix) -> CMatrix {
        &(&self.t_inv * a) * &self.t
    }

    fn check_dim(&self, a: &CMatrix, context: &'static str) -> Result<()> {
        let n = self.dim();
        if a.shape() == (n, n) {
            Ok(())
        } else {
            Err(dim_mismatch(context, format!("{n}x{n}"), format!("{}x{}", a.rows(), a.cols())))
        }
    }
}

/// `T = sqrt(V†V)` with the rows of `V` the duals `⟨φ_n|`, using the default condition cap.
pub fn canonical_transform(ham: &PtHamiltonian, tol: f64) -> Result<CanonicalMap> {
    canonical_transform_with_cap(ham, tol, DEFAULT_CONDITION_CAP)
}

pub fn canonical_transform_with_cap(
    ham: &PtHamiltonian,
    tol: f64,
    condition_cap: f64,
) -> Result<CanonicalMap> {
    let basis = biorthonormal_basis(ham, tol)?;
    // V†V = Σ_n |φ_n⟩⟨φ_n|
    let metric = &basis.phi * &basis.phi.adjoint();
    let root = PsdSqrt::new(&metric, tol)?;
    let smallest = root.roots.first().copied().unwrap_or(0.0);
    let largest = root.roots.last().copied().unwrap_or(0.0);
    let condition = if smallest > 0.0 { largest / smallest } else { f64::INFINITY };
    if !(condition <= condition_cap) {
        return Err(Error::IllConditioned { condition, cap: condition_cap });
    }
    let log_mean = root.roots.iter().map(|s| s.ln()).sum::<f64>() / root.roots.len() as f64;
    let g = log_mean.exp();
    Ok(CanonicalMap {
        t: root.assemble(|s| s / g),
        t_inv: root.assemble(|s| g / s),
        condition,
    })
}

/// Tolerance on the hermiticity defect of `T H T⁻¹`, relative to `‖H‖`.
pub const HERMITIZATION_TOL: f64 = 1e-8;

/// `h = T H T⁻¹`, returned exactly hermitian after checking its defect.
pub fn hermitian_representation(ham: &PtHamiltonian, map: &CanonicalMap) -> Result<CMatrix> {
    map.check_dim(ham.h(), "hermitian_representation")?;
    let h = map.forward(ham.h());
    let defect = h.hermiticity_defect();
    if defect > HERMITIZATION_TOL * ham.h().norm().max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(h.hermitian_part())
}

/// `o = T O T⁻¹`.
pub fn map_observable(o: &CMatrix, map: &CanonicalMap) -> Result<CMatrix> {
    map.check_dim(o, "map_observable")?;
    Ok(map.forward(o))
}

/// `ρ = T⁻¹ ϱ T`: a hermitian-representation state expressed in the PT representation.
pub fn map_state_back(varrho: &CMatrix, map: &CanonicalMap) -> Result<CMatrix> {
    map.check_dim(varrho, "map_state_back")?;
    Ok(map.backward(varrho))
}
