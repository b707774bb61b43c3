use num_complex::Complex64;
use proptest::prelude::*;

use ptdeco_core::channel::{apply_channel, build_composite, kraus_extract, DEFAULT_WEIGHT_CUT};
use ptdeco_core::dephasing::{
    decoherence_from_gamma, discrete_gamma, evolve_exact, gamma_for_bath, qubit_energies, qubit_hamiltonian,
    qubit_transform, DephasingModel, SpectralDensity,
};
use ptdeco_core::linalg::{eig_hermitian, pauli, CMatrix, DEFAULT_TOL};
use ptdeco_core::oracle::{BathMode, DiscreteBath};
use ptdeco_core::pt::{check_pt_symmetry, hermitian_representation, map_state_back};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn coherent(y: f64) -> CMatrix {
    CMatrix::from_rows(&[[c(0.5, 0.0), c(0.0, y)], [c(0.0, -y), c(0.5, 0.0)]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoherence_is_a_contraction(alpha in -1.0f64..=1.0, gamma in 0.0f64..1e3) {
        let d = decoherence_from_gamma(alpha, gamma).unwrap();
        prop_assert!(d > 0.0 || gamma * (1.0 - alpha * alpha) > 700.0);
        prop_assert!(d <= 1.0);
    }

    #[test]
    fn decoherence_slows_toward_exceptional_point(a in 0.0f64..1.0, b in 0.0f64..1.0, gamma in 0.0f64..50.0) {
        let (lo, hi) = if a.abs() <= b.abs() { (a, b) } else { (b, a) };
        prop_assert!(decoherence_from_gamma(lo, gamma).unwrap() <= decoherence_from_gamma(hi, gamma).unwrap());
    }

    #[test]
    fn gamma_grows_with_temperature(beta in 0.2f64..5.0, factor in 1.1f64..4.0, t in 0.1f64..8.0) {
        let j = SpectralDensity::figure1();
        let hot = gamma_for_bath(&j, beta, t, 1e-10).unwrap().value;
        let cold = gamma_for_bath(&j, beta * factor, t, 1e-10).unwrap().value;
        prop_assert!(cold >= 0.0);
        prop_assert!(hot >= cold - 1e-9);
    }

    #[test]
    fn closed_form_stays_physical(alpha in -0.99f64..0.99, y in -0.5f64..0.5, t in 0.0f64..15.0) {
        let model = DephasingModel::new(alpha, 0.5, SpectralDensity::figure1()).unwrap();
        let rho = evolve_exact(&model, &coherent(y), t, 1e-10).unwrap();
        prop_assert!((rho.trace() - 1.0).norm() < 1e-12);
        prop_assert!(rho.hermiticity_defect() < 1e-14);
        let eig = eig_hermitian(&rho, DEFAULT_TOL).unwrap();
        prop_assert!(eig.values[0] > -1e-12);
        // coherence in the energy eigenbasis never grows
        prop_assert!(rho[(0, 1)].im.abs() <= y.abs() + 1e-15);
    }

    #[test]
    fn pt_representation_keeps_trace(alpha in -0.95f64..0.95, y in -0.5f64..0.5, t in 0.0f64..10.0) {
        let model = DephasingModel::new(alpha, 0.5, SpectralDensity::figure1()).unwrap();
        let rho = evolve_exact(&model, &coherent(y), t, 1e-10).unwrap();
        let map = qubit_transform(alpha).unwrap();
        let back = map_state_back(&rho, &map).unwrap();
        prop_assert!((back.trace() - 1.0).norm() < 1e-12);
        prop_assert!(map.forward(&back).dist(&rho) < 1e-12);
    }

    #[test]
    fn qubit_hermitization(alpha in -0.999f64..0.999) {
        let ham = qubit_hamiltonian(alpha);
        prop_assert!(check_pt_symmetry(&ham, 1e-12));
        let map = qubit_transform(alpha).unwrap();
        let h = hermitian_representation(&ham, &map).unwrap();
        let (e1, _) = qubit_energies(alpha).unwrap();
        let scale = 1.0 / (1.0 - alpha * alpha).sqrt();
        prop_assert!(h.dist(&pauli::sigma_x().scale_real(-e1)) < 1e-12 * scale);
    }

    #[test]
    fn discrete_gamma_matches_bath(
        w1 in 0.1f64..5.0, w2 in 0.1f64..5.0, g1 in 0.0f64..1.0, g2 in 0.0f64..1.0,
        beta in 0.1f64..10.0, t in 0.0f64..20.0,
    ) {
        let bath = DiscreteBath::new(vec![BathMode { omega: w1, g: g1 }, BathMode { omega: w2, g: g2 }], 3).unwrap();
        let direct = discrete_gamma(&[(w1, g1), (w2, g2)], beta, t);
        prop_assert!((bath.gamma(beta, t) - direct).abs() <= 1e-12 * direct.max(1.0));
        prop_assert!(direct >= 0.0);
    }

    #[test]
    fn dephasing_channel_preserves_trace_and_energy(
        e in 0.2f64..2.0, omega in 0.2f64..3.0, g in 0.0f64..1.0, t in 0.0f64..6.0,
        p in 0.05f64..0.95, re in -0.2f64..0.2, im in -0.2f64..0.2,
    ) {
        let h_s = pauli::sigma_z().scale_real(e);
        let h_b = CMatrix::from_real_diag(&[0.0, omega]);
        let v_b = pauli::sigma_x().scale_real(g);
        let model = build_composite(&h_s, &h_b, &h_s, &v_b).unwrap();
        prop_assert!(model.dephasing);
        let env = CMatrix::from_real_diag(&[0.8, 0.2]);
        let channel = kraus_extract(&model, &env, t, DEFAULT_WEIGHT_CUT).unwrap();
        let rho = CMatrix::from_rows(&[[c(p, 0.0), c(re, im)], [c(re, -im), c(1.0 - p, 0.0)]]).unwrap();
        let out = apply_channel(&channel, &rho).unwrap();
        prop_assert!((out.trace() - 1.0).norm() < 1e-12);
        prop_assert!((out[(0, 0)].re - p).abs() < 1e-12);
        prop_assert!(out[(0, 1)].norm() <= rho[(0, 1)].norm() + 1e-12);
    }
}
