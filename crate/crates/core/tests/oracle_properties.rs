//! Closed forms against the number-basis oracle on randomly drawn states.

mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use twomode::fock::{
    fock_from_superposition, oracle_apply_device, oracle_expectation, oracle_expectation_product,
    oracle_position_density_h, oracle_q_function, stokes_matrices, OperatorMatrix,
};
use twomode::quadrature::Rule1D;
use twomode::{
    apply_device, crc, q_function, stokes_stats, wigner_point, CoherentSuperposition, CoherentTerm,
    PhasePoint4, SphereDirection,
};

use common::c;

const N_MAX: usize = 32;

fn stokes32() -> &'static [OperatorMatrix; 4] {
    static S: OnceLock<[OperatorMatrix; 4]> = OnceLock::new();
    S.get_or_init(|| stokes_matrices(N_MAX))
}

fn amplitude(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..2.0 * PI).prop_map(|(rho, th)| Complex64::from_polar(rho, th))
}

fn state(max_branches: usize, r: f64) -> impl Strategy<Value = CoherentSuperposition> {
    prop::collection::vec(
        (amplitude(1.0), amplitude(r), amplitude(r)),
        1..=max_branches,
    )
    .prop_filter_map("degenerate superposition", |branches| {
        let terms = branches
            .into_iter()
            .map(|(w, h, v)| CoherentTerm::new(w, h, v).unwrap())
            .collect();
        CoherentSuperposition::new(terms).ok()?.normalize().ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stokes_statistics_match_oracle(psi in state(3, 1.8)) {
        let s = stokes32();
        let f = fock_from_superposition(&psi, N_MAX).unwrap();
        let st = stokes_stats(&psi).unwrap();
        for (k, sk) in s.iter().enumerate() {
            let m = oracle_expectation(&f, sk).unwrap().re;
            prop_assert!((st.mean[k] - m).abs() < 1e-9, "mean {k}: {} vs {m}", st.mean[k]);
            if k > 0 {
                let v = oracle_expectation_product(&f, sk, sk).unwrap().re - m * m;
                prop_assert!((st.variance[k - 1] - v).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn q_function_matches_oracle(psi in state(3, 1.8), theta in 0.0..PI, phi in 0.0..2.0 * PI) {
        let f = fock_from_superposition(&psi, N_MAX).unwrap();
        let dir = SphereDirection::new(theta, phi).unwrap();
        let q = q_function(&psi, dir).unwrap();
        prop_assert!((q - oracle_q_function(&f, dir)).abs() < 1e-10);
        prop_assert!(q >= -1e-15);
    }

    #[test]
    fn gram_matrix_is_positive_semidefinite(psi in state(4, 2.5)) {
        let g = psi.gram();
        let k = g.len();
        let m = DMatrix::from_fn(k, k, |i, j| g[i][j]);
        prop_assert!((&m - m.adjoint()).norm() < 1e-14);
        let eig = m.symmetric_eigenvalues();
        prop_assert!(eig.iter().all(|&e| e > -1e-12), "{eig:?}");
    }

    #[test]
    fn device_matches_oracle_and_inverts(psi in state(2, 1.5), phi1 in -PI..PI, theta in -PI..PI, phi2 in -PI..PI) {
        let dev = crc(phi1, theta, phi2);
        prop_assert!(dev.unitarity_defect() < 1e-14);
        let out = apply_device(&psi, &dev).unwrap();
        let via_oracle = oracle_apply_device(&fock_from_superposition(&psi, N_MAX).unwrap(), &dev).unwrap();
        let direct = fock_from_superposition(&out, N_MAX).unwrap();
        let fidelity = direct.inner(&via_oracle).unwrap().norm();
        prop_assert!((fidelity - 1.0).abs() < 1e-9, "fidelity {fidelity}");

        let back = apply_device(&out, &dev.inverse()).unwrap();
        for (a, b) in back.terms().iter().zip(psi.terms()) {
            prop_assert!((a.h - b.h).norm() < 1e-12 && (a.v - b.v).norm() < 1e-12);
        }
        // passive devices keep the photon number
        let (s_in, s_out) = (stokes_stats(&psi).unwrap(), stokes_stats(&out).unwrap());
        prop_assert!((s_in.mean[0] - s_out.mean[0]).abs() < 1e-10);
    }

    #[test]
    fn wigner_is_invariant_under_global_phase(psi in state(3, 2.0), chi in 0.0..2.0 * PI, q in -2.0..2.0f64, p in -2.0..2.0f64) {
        let pt = PhasePoint4::new(q, p, -p, q);
        let a = wigner_point(&psi, pt).unwrap();
        let b = wigner_point(&psi.with_global_phase(chi), pt).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn wigner_marginal_matches_position_density() {
    let psi = twomode::make_two_branch(c(0.9, 0.4), c(-0.3, 0.6), c(-0.7, -0.2), c(0.5, 0.1), -1.0)
        .unwrap();
    let f = fock_from_superposition(&psi, N_MAX).unwrap();
    let rule = Rule1D::gauss_legendre(48, -7.0, 7.0).unwrap();
    for q1 in [-1.5, -0.4, 0.0, 0.7, 1.9] {
        let mut marginal = 0.0;
        for (p1, w1) in rule.nodes.iter().zip(&rule.weights) {
            for (q2, w2) in rule.nodes.iter().zip(&rule.weights) {
                for (p2, w3) in rule.nodes.iter().zip(&rule.weights) {
                    marginal += w1
                        * w2
                        * w3
                        * wigner_point(&psi, PhasePoint4::new(q1, *p1, *q2, *p2)).unwrap();
                }
            }
        }
        let density = oracle_position_density_h(&f, q1);
        assert!(
            (marginal - density).abs() < 1e-5,
            "q1 = {q1}: {marginal} vs {density}"
        );
    }
}
