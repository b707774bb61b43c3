//! Composite system/environment dynamics and operator-sum representations.
//!
//! A [`CompositeModel`] lives in the hermitian representation:
//! `h = h_S ⊗ I + I ⊗ H_B + V_S ⊗ V_B`, with system-major tensor ordering.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{
    eig_hermitian, kron, partial_trace_env, unitary_propagator, CMatrix, HermitianEigen, DEFAULT_TOL,
};
use crate::pt::CanonicalMap;

/// Default weight below which environment eigenstates and Kraus operators are discarded.
pub const DEFAULT_WEIGHT_CUT: f64 = 1e-12;
/// Tolerance for density-matrix validation (trace, hermiticity, positivity).
pub const DENSITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct CompositeModel {
    pub h_sys: CMatrix,
    pub h_env: CMatrix,
    /// `V_S ⊗ V_B`.
    pub h_int: CMatrix,
    /// Full composite generator.
    pub h: CMatrix,
    pub dim_sys: usize,
    pub dim_env: usize,
    /// `[h_S ⊗ I, h_I] = 0`: no energy exchange, only dephasing.
    pub dephasing: bool,
}

fn require_hermitian(m: &CMatrix, context: &'static str) -> Result<()> {
    m.ensure_square(context)?;
    let defect = m.hermiticity_defect();
    if defect > DEFAULT_TOL * m.norm().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Assembles `h = h_S ⊗ I + I ⊗ H_B + V_S ⊗ V_B`.
pub fn build_composite(
    h_sys: &CMatrix,
    h_env: &CMatrix,
    v_sys: &CMatrix,
    v_env: &CMatrix,
) -> Result<CompositeModel> {
    for (m, ctx) in [
        (h_sys, "build_composite (h_S)"),
        (h_env, "build_composite (H_B)"),
        (v_sys, "build_composite (V_S)"),
        (v_env, "build_composite (V_B)"),
    ] {
        require_hermitian(m, ctx)?;
    }
    let (ds, db) = (h_sys.rows(), h_env.rows());
    if v_sys.rows() != ds {
        return Err(dim_mismatch("build_composite (V_S)", ds, v_sys.rows()));
    }
    if v_env.rows() != db {
        return Err(dim_mismatch("build_composite (V_B)", db, v_env.rows()));
    }
    let sys_part = kron(h_sys, &CMatrix::identity(db))?;
    let env_part = kron(&CMatrix::identity(ds), h_env)?;
    let h_int = kron(v_sys, v_env)?;
    let h = &(&sys_part + &env_part) + &h_int;
    let comm = sys_part.commutator(&h_int).norm();
    let dephasing = comm <= DEFAULT_TOL * (sys_part.norm() * h_int.norm()).max(1.0);
    Ok(CompositeModel {
        h_sys: h_sys.clone(),
        h_env: h_env.clone(),
        h_int,
        h: h.hermitian_part(),
        dim_sys: ds,
        dim_env: db,
        dephasing,
    })
}

/// `U(t) = exp(−i h t)`.
pub fn propagator(model: &CompositeModel, t: f64) -> Result<CMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time {t} is not finite")));
    }
    unitary_propagator(&model.h, t)
}

/// Checks trace, hermiticity and positivity of a density matrix.
pub fn validate_density(rho: &CMatrix, tol: f64) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotDensityMatrix(format!("shape {}x{}", rho.rows(), rho.cols())));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let eig = eig_hermitian(rho, tol).map_err(|e| match e {
        Error::NotHermitian { defect } => Error::NotDensityMatrix(format!("hermiticity defect {defect:.3e}")),
        other => other,
    })?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -tol {
            return Err(Error::NotDensityMatrix(format!("eigenvalue {lowest:.3e}")));
        }
    }
    Ok(())
}

fn check_state_dims(model: &CompositeModel, rho_sys: &CMatrix, omega_env: &CMatrix) -> Result<()> {
    if rho_sys.shape() != (model.dim_sys, model.dim_sys) {
        return Err(dim_mismatch("initial system state", model.dim_sys, rho_sys.rows()));
    }
    if omega_env.shape() != (model.dim_env, model.dim_env) {
        return Err(dim_mismatch("environment state", model.dim_env, omega_env.rows()));
    }
    Ok(())
}

/// `ϱ_S(t) = tr_B{U(t) (ϱ_S(0) ⊗ Ω_B) U(t)†}` for an uncorrelated initial state.
pub fn reduced_state(
    model: &CompositeModel,
    rho_sys: &CMatrix,
    omega_env: &CMatrix,
    t: f64,
) -> Result<CMatrix> {
    check_state_dims(model, rho_sys, omega_env)?;
    validate_density(rho_sys, DENSITY_TOL)?;
    validate_density(omega_env, DENSITY_TOL)?;
    let u = propagator(model, t)?;
    let joint = kron(rho_sys, omega_env)?;
    let evolved = &(&u * &joint) * &u.adjoint();
    Ok(partial_trace_env(&evolved, model.dim_sys, model.dim_env)?.hermitian_part())
}

/// Diagonalized composite generator; evaluates `U(t)` for many times from one eigensystem.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    eigen: HermitianEigen,
    dim_sys: usize,
    dim_env: usize,
}

impl SpectralPropagator {
    pub fn new(model: &CompositeModel) -> Result<Self> {
        Ok(Self { eigen: eig_hermitian(&model.h, DEFAULT_TOL)?, dim_sys: model.dim_sys, dim_env: model.dim_env })
    }

    pub fn energies(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn propagator(&self, t: f64) -> CMatrix {
        self.eigen.apply_fn(|e| Complex64::from_polar(1.0, -e * t))
    }

    /// Reduced system states at each time, evaluated in parallel.
    pub fn reduced_states(&self, joint: &CMatrix, times: &[f64]) -> Result<Vec<CMatrix>> {
        let n = self.dim_sys * self.dim_env;
        if joint.shape() != (n, n) {
            return Err(dim_mismatch("SpectralPropagator::reduced_states", n, joint.rows()));
        }
        let w = &self.eigen.vectors;
        let w_adj = w.adjoint();
        // joint state in the energy eigenbasis
        let rotated = &(&w_adj * joint) * w;
        let energies = &self.eigen.values;
        times
            .par_iter()
            .map(|&t| {
                let phases: Vec<Complex64> = energies.iter().map(|&e| Complex64::from_polar(1.0, -e * t)).collect();
                let evolved = CMatrix::from_fn(n, n, |k, l| phases[k] * rotated[(k, l)] * phases[l].conj());
                let x = w * &evolved;
                let (ds, db) = (self.dim_sys, self.dim_env);
                let reduced = CMatrix::from_fn(ds, ds, |s, sp| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..db {
                        let row = x.row(s * db + b);
                        let wrow = w.row(sp * db + b);
                        acc += row.iter().zip(wrow).map(|(a, c)| a * c.conj()).sum::<Complex64>();
                    }
                    acc
                });
                Ok(reduced.hermitian_part())
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// `Φ[ϱ] = Σ K_i ϱ K_i†`.
    Hermitian,
    /// `Φ[ρ] = Σ L_i ρ R_i`.
    Pt,
}

#[derive(Debug, Clone)]
pub enum KrausOps {
    Hermitian(Vec<CMatrix>),
    Pt(Vec<(CMatrix, CMatrix)>),
}

/// An operator-sum representation in either the hermitian or the PT representation.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    ops: KrausOps,
}

impl KrausChannel {
    pub fn hermitian(ops: Vec<CMatrix>) -> Result<Self> {
        let dim = Self::common_dim(ops.iter())?;
        Ok(Self { dim, ops: KrausOps::Hermitian(ops) })
    }

    pub fn pt(pairs: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        let dim = Self::common_dim(pairs.iter().flat_map(|(l, r)| [l, r]))?;
        Ok(Self { dim, ops: KrausOps::Pt(pairs) })
    }

    fn common_dim<'a>(mut it: impl Iterator<Item = &'a CMatrix>) -> Result<usize> {
        let first = it.next().ok_or_else(|| Error::InvalidParameter("empty Kraus family".into()))?;
        let d = first.ensure_square("KrausChannel")?;
        for m in it {
            if m.shape() != (d, d) {
                return Err(dim_mismatch("KrausChannel", format!("{d}x{d}"), format!("{}x{}", m.rows(), m.cols())));
            }
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ChannelKind {
        match self.ops {
            KrausOps::Hermitian(_) => ChannelKind::Hermitian,
            KrausOps::Pt(_) => ChannelKind::Pt,
        }
    }

    pub fn ops(&self) -> &KrausOps {
        &self.ops
    }

    pub fn len(&self) -> usize {
        match &self.ops {
            KrausOps::Hermitian(k) => k.len(),
            KrausOps::Pt(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ K_i†K_i` (hermitian) or `Σ L_i R_i` (PT).
    pub fn normalization(&self) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        match &self.ops {
            KrausOps::Hermitian(ks) => ks.iter().for_each(|k| acc += &(&k.adjoint() * k)),
            KrausOps::Pt(pairs) => pairs.iter().for_each(|(l, r)| acc += &(l * r)),
        }
        acc
    }

    /// Distance of [`Self::normalization`] from the identity; nonzero after weight truncation.
    pub fn completeness_defect(&self) -> f64 {
        self.normalization().dist(&CMatrix::identity(self.dim))
    }

    /// `‖Φ[I] − I‖`.
    pub fn unitality_defect(&self) -> f64 {
        let id = CMatrix::identity(self.dim);
        apply_channel(self, &id).expect("dimensions match").dist(&id)
    }

    /// `J = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, indexed `(i, a), (j, b)`.
    pub fn choi_matrix(&self) -> CMatrix {
        let d = self.dim;
        let mut j = CMatrix::zeros(d * d, d * d);
        let mut add_term = |left: &CMatrix, right: &CMatrix| {
            // Φ(|i⟩⟨j|)[a, b] = Σ left[a, i] right[j, b]
            for i in 0..d {
                for a in 0..d {
                    let la = left[(a, i)];
                    if la == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for jj in 0..d {
                        for b in 0..d {
                            j[(i * d + a, jj * d + b)] += la * right[(jj, b)];
                        }
                    }
                }
            }
        };
        match &self.ops {
            KrausOps::Hermitian(ks) => ks.iter().for_each(|k| add_term(k, &k.adjoint())),
            KrausOps::Pt(pairs) => pairs.iter().for_each(|(l, r)| add_term(l, r)),
        }
        j
    }

    /// Choi-matrix positivity within `tol`; defined for the hermitian representation only.
    pub fn is_completely_positive(&self, tol: f64) -> Result<bool> {
        if self.kind() != ChannelKind::Hermitian {
            return Err(Error::Representation("complete positivity is checked in the hermitian representation"));
        }
        let choi = self.choi_matrix();
        let eig = eig_hermitian(&choi, tol)?;
        Ok(eig.values.first().map_or(true, |&v| v >= -tol * choi.norm().max(1.0)))
    }
}

/// Operator-sum representation of the reduced dynamics at time `t`.
///
/// `K_(α,β) = √p_α ⟨β|U(t)|α⟩` over the eigenstates `|α⟩` of `Ω_B` with `p_α > weight_cut`
/// (descending `p_α`) and the standard basis `|β⟩` (ascending). Operators whose weight
/// `tr(K†K)/d` does not exceed `weight_cut` are dropped as well; the resulting
/// normalization defect is available from [`KrausChannel::completeness_defect`].
pub fn kraus_extract(
    model: &CompositeModel,
    omega_env: &CMatrix,
    t: f64,
    weight_cut: f64,
) -> Result<KrausChannel> {
    if omega_env.shape() != (model.dim_env, model.dim_env) {
        return Err(dim_mismatch("kraus_extract", model.dim_env, omega_env.rows()));
    }
    validate_density(omega_env, DENSITY_TOL)?;
    let eig = eig_hermitian(omega_env, DENSITY_TOL)?;
    let u = propagator(model, t)?;
    let (ds, db) = (model.dim_sys, model.dim_env);

    let mut order: Vec<usize> = (0..db).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]).then(a.cmp(&b)));

    let mut ops = Vec::new();
    for &alpha in &order {
        let p = eig.values[alpha];
        if p <= weight_cut {
            continue;
        }
        let amp = p.sqrt();
        let env_vec = eig.vectors.column(alpha);
        for beta in 0..db {
            let k = CMatrix::from_fn(ds, ds, |s, sp| {
                let row = u.row(s * db + beta);
                let acc: Complex64 = (0..db).map(|bp| row[sp * db + bp] * env_vec[bp]).sum();
                acc * amp
            });
            let weight = k.norm().powi(2) / ds as f64;
            if weight > weight_cut {
                ops.push(k);
            }
        }
    }
    KrausChannel::hermitian(ops)
}

/// `L_i = T⁻¹ K_i T`, `R_i = T⁻¹ K_i† T`.
pub fn pt_kraus(channel: &KrausChannel, map: &CanonicalMap) -> Result<KrausChannel> {
    let KrausOps::Hermitian(ks) = channel.ops() else {
        return Err(Error::Representation("pt_kraus expects a hermitian-representation channel"));
    };
    if map.dim() != channel.dim() {
        return Err(dim_mismatch("pt_kraus", channel.dim(), map.dim()));
    }
    KrausChannel::pt(ks.iter().map(|k| (map.backward(k), map.backward(&k.adjoint()))).collect())
}

/// `Σ K ϱ K†` or `Σ L ρ R`.
pub fn apply_channel(channel: &KrausChannel, state: &CMatrix) -> Result<CMatrix> {
    let d = channel.dim();
    if state.shape() != (d, d) {
        return Err(dim_mismatch("apply_channel", format!("{d}x{d}"), format!("{}x{}", state.rows(), state.cols())));
    }
    let mut out = CMatrix::zeros(d, d);
    match channel.ops() {
        KrausOps::Hermitian(ks) => ks.iter().for_each(|k| out += &(&(k * state) * &k.adjoint())),
        KrausOps::Pt(pairs) => pairs.iter().for_each(|(l, r)| out += &(&(l * state) * r)),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, partial_trace_env};
    use crate::pt::{canonical_transform, PtHamiltonian};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus_y() -> CMatrix {
        CMatrix::from_rows(&[[c(0.5, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.5, 0.0)]]).unwrap()
    }

    fn env3() -> (CMatrix, CMatrix, CMatrix) {
        let h_b = CMatrix::from_real_diag(&[0.0, 0.7, 1.9]);
        let v_b = CMatrix::from_rows(&[
            [c(0.0, 0.0), c(0.4, 0.1), c(0.0, 0.0)],
            [c(0.4, -0.1), c(0.2, 0.0), c(0.3, 0.0)],
            [c(0.0, 0.0), c(0.3, 0.0), c(-0.1, 0.0)],
        ])
        .unwrap();
        let omega = CMatrix::from_real_diag(&[0.6, 0.3, 0.1]);
        (h_b, v_b, omega)
    }

    #[test]
    fn dephasing_flag() {
        let (h_b, v_b, _) = env3();
        let hs = pauli::sigma_z().scale_real(0.8);
        assert!(build_composite(&hs, &h_b, &hs, &v_b).unwrap().dephasing);
        assert!(!build_composite(&pauli::sigma_z(), &h_b, &pauli::sigma_x(), &v_b).unwrap().dephasing);
        let m = build_composite(&pauli::sigma_z(), &h_b, &pauli::sigma_x(), &v_b).unwrap();
        assert_eq!(m.h.shape(), (6, 6));
    }

    #[test]
    fn composite_rejects_bad_inputs() {
        let (h_b, v_b, _) = env3();
        let non_herm = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(build_composite(&non_herm, &h_b, &pauli::sigma_x(), &v_b), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            build_composite(&pauli::sigma_z(), &h_b, &CMatrix::identity(3), &v_b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn propagator_basics() {
        let (h_b, v_b, _) = env3();
        let m = build_composite(&pauli::sigma_z(), &h_b, &pauli::sigma_x(), &v_b).unwrap();
        assert!(propagator(&m, 0.0).unwrap().dist(&CMatrix::identity(6)) < 1e-15);
        let u = propagator(&m, 1.3).unwrap();
        assert!((&u * &propagator(&m, -1.3).unwrap()).dist(&CMatrix::identity(6)) < 1e-10);
        assert!((&u * &u.adjoint()).dist(&CMatrix::identity(6)) < 1e-10);

        let zero = CMatrix::zeros(2, 2);
        let m = build_composite(&pauli::sigma_z(), &zero, &zero, &zero).unwrap();
        let u = propagator(&m, PI / 2.0).unwrap();
        let expected = CMatrix::from_diag(&[c(0.0, -1.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 1.0)]);
        assert!(u.dist(&expected) < 1e-14);
    }

    #[test]
    fn spectral_propagator_matches_expm() {
        let (h_b, v_b, omega) = env3();
        let m = build_composite(&pauli::sigma_z(), &h_b, &pauli::sigma_x(), &v_b).unwrap();
        let sp = SpectralPropagator::new(&m).unwrap();
        assert!(sp.propagator(2.1).dist(&propagator(&m, 2.1).unwrap()) < 1e-12);
        let rho = plus_y();
        let joint = kron(&rho, &omega).unwrap();
        let states = sp.reduced_states(&joint, &[0.0, 0.5, 3.0]).unwrap();
        for (s, &t) in states.iter().zip(&[0.0, 0.5, 3.0]) {
            assert!(s.dist(&reduced_state(&m, &rho, &omega, t).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn reduced_state_examples() {
        let (h_b, v_b, omega) = env3();
        let hs = pauli::sigma_x().scale_real(0.8);
        let rho = plus_y();
        let m = build_composite(&hs, &h_b, &hs, &v_b).unwrap();
        assert!(reduced_state(&m, &rho, &omega, 0.0).unwrap().dist(&rho) < 1e-14);

        let free = build_composite(&hs, &h_b, &hs, &CMatrix::zeros(3, 3)).unwrap();
        let t = 0.9;
        let us = unitary_propagator(&hs, t).unwrap();
        let expected = &(&us * &rho) * &us.adjoint();
        assert!(reduced_state(&free, &rho, &omega, t).unwrap().dist(&expected) < 1e-12);

        // populations in the eigenbasis of h_S are conserved under dephasing
        let eig = eig_hermitian(&hs, 1e-12).unwrap();
        let w = &eig.vectors;
        let pops0 = (&(&w.adjoint() * &rho) * w).diag();
        for t in [0.3, 1.7, 4.2] {
            let r = reduced_state(&m, &rho, &omega, t).unwrap();
            let pops = (&(&w.adjoint() * &r) * w).diag();
            for (a, b) in pops.iter().zip(&pops0) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn reduced_state_rejects_invalid_states() {
        let (h_b, v_b, omega) = env3();
        let m = build_composite(&pauli::sigma_z(), &h_b, &pauli::sigma_x(), &v_b).unwrap();
        let bad_trace = CMatrix::from_real_diag(&[0.7, 0.7]);
        assert!(matches!(reduced_state(&m, &bad_trace, &omega, 1.0), Err(Error::NotDensityMatrix(_))));
        let negative = CMatrix::from_real_diag(&[1.2, -0.2]);
        assert!(matches!(reduced_state(&m, &negative, &omega, 1.0), Err(Error::NotDensityMatrix(_))));
    }

    #[test]
    fn pure_environment_without_coupling_gives_one_unitary_kraus() {
        let (h_b, _, _) = env3();
        let hs = pauli::sigma_x().scale_real(0.8);
        let m = build_composite(&hs, &h_b, &hs, &CMatrix::zeros(3, 3)).unwrap();
        let ground = CMatrix::from_real_diag(&[1.0, 0.0, 0.0]);
        let ch = kraus_extract(&m, &ground, 1.1, DEFAULT_WEIGHT_CUT).unwrap();
        assert_eq!(ch.len(), 1);
        let KrausOps::Hermitian(ks) = ch.ops() else { unreachable!() };
        assert!((&ks[0] * &ks[0].adjoint()).dist(&CMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn kraus_reproduces_reduced_state() {
        let h_b = CMatrix::from_real_diag(&[0.0, 1.3]);
        let v_b = pauli::sigma_x();
        let hs = pauli::sigma_z().scale_real(0.5);
        let m = build_composite(&hs, &h_b, &pauli::sigma_x(), &v_b).unwrap();
        let omega = CMatrix::identity(2).scale_real(0.5);
        let ch = kraus_extract(&m, &omega, 0.8, DEFAULT_WEIGHT_CUT).unwrap();
        assert!(ch.len() <= 4);
        assert!(ch.completeness_defect() <= 1e-10);
        let rho = plus_y();
        let direct = reduced_state(&m, &rho, &omega, 0.8).unwrap();
        assert!(apply_channel(&ch, &rho).unwrap().dist(&direct) < 1e-9);
        assert!(ch.is_completely_positive(1e-9).unwrap());
    }

    #[test]
    fn dephasing_kraus_operators_commute() {
        let (h_b, v_b, omega) = env3();
        let hs = pauli::sigma_x().scale_real(-0.6);
        let m = build_composite(&hs, &h_b, &hs, &v_b).unwrap();
        let ch = kraus_extract(&m, &omega, 2.0, DEFAULT_WEIGHT_CUT).unwrap();
        let KrausOps::Hermitian(ks) = ch.ops() else { unreachable!() };
        for a in ks {
            assert!(a.commutator(&a.adjoint()).norm() < 1e-10);
            for b in ks {
                assert!(a.commutator(&b.adjoint()).norm() < 1e-9);
            }
        }
        assert!(ch.unitality_defect() < 1e-10);
    }

    fn qubit_map(alpha: f64) -> CanonicalMap {
        let h = CMatrix::from_rows(&[[c(0.0, alpha), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, -alpha)]]).unwrap();
        canonical_transform(&PtHamiltonian::new(h, pauli::sigma_x()).unwrap(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn pt_kraus_with_identity_map() {
        let k = unitary_propagator(&pauli::sigma_z(), 0.4).unwrap();
        let ch = KrausChannel::hermitian(vec![k.clone()]).unwrap();
        let map = qubit_map(0.0);
        let pt = pt_kraus(&ch, &map).unwrap();
        let KrausOps::Pt(pairs) = pt.ops() else { unreachable!() };
        assert!(pairs[0].0.dist(&k) < 1e-12);
        assert!(pairs[0].1.dist(&k.adjoint()) < 1e-12);
    }

    #[test]
    fn pt_kraus_of_unitary_is_not_adjoint_pair() {
        let map = qubit_map(0.6);
        let hs = map.forward(
            &CMatrix::from_rows(&[[c(0.0, 0.6), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, -0.6)]]).unwrap(),
        );
        let u = unitary_propagator(&hs.hermitian_part(), 1.0).unwrap();
        let ch = KrausChannel::hermitian(vec![u.clone()]).unwrap();
        let pt = pt_kraus(&ch, &map).unwrap();
        let KrausOps::Pt(pairs) = pt.ops() else { unreachable!() };
        let (l, r) = &pairs[0];
        assert!((l * r).dist(&CMatrix::identity(2)) < 1e-12);
        assert!(r.dist(&l.adjoint()) > 1e-3);
        assert!(pt.completeness_defect() < 1e-10);
        assert!(apply_channel(&pt, &CMatrix::identity(2)).unwrap().dist(&CMatrix::identity(2)) < 1e-10);
        assert!(matches!(pt_kraus(&pt, &map), Err(Error::Representation(_))));
        assert!(matches!(pt.is_completely_positive(1e-9), Err(Error::Representation(_))));
    }

    #[test]
    fn apply_channel_examples() {
        let ch = KrausChannel::hermitian(vec![CMatrix::identity(2)]).unwrap();
        let rho = plus_y();
        assert_eq!(apply_channel(&ch, &rho).unwrap(), rho);
        assert!(apply_channel(&ch, &CMatrix::identity(3)).is_err());

        let (h_b, v_b, omega) = env3();
        let hs = pauli::sigma_x().scale_real(-0.6);
        let m = build_composite(&hs, &h_b, &hs, &v_b).unwrap();
        let herm = kraus_extract(&m, &omega, 1.5, DEFAULT_WEIGHT_CUT).unwrap();
        let mixed = CMatrix::identity(2).scale_real(0.5);
        assert!(apply_channel(&herm, &mixed).unwrap().dist(&mixed) < 1e-10);

        let map = qubit_map(0.6);
        let pt = pt_kraus(&herm, &map).unwrap();
        let lhs = apply_channel(&pt, &map.backward(&rho)).unwrap();
        let rhs = map.backward(&apply_channel(&herm, &rho).unwrap());
        assert!(lhs.dist(&rhs) < 1e-10);
    }

    #[test]
    fn choi_of_identity_channel() {
        let ch = KrausChannel::hermitian(vec![CMatrix::identity(2)]).unwrap();
        let choi = ch.choi_matrix();
        // unnormalized maximally entangled projector
        let bell = CMatrix::from_real(4, 4, &[1., 0., 0., 1., 0., 0., 0., 0., 0., 0., 0., 0., 1., 0., 0., 1.]).unwrap();
        assert!(choi.dist(&bell) < 1e-15);
        assert!(partial_trace_env(&choi, 2, 2).unwrap().dist(&CMatrix::identity(2)) < 1e-15);
        // transpose map is not completely positive
        let not_cp = CMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.]).unwrap();
        assert!(eig_hermitian(&not_cp, 1e-12).unwrap().values[0] < -0.5);
    }
}
