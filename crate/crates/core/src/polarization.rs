//! SU(2) Q-function on the Poincaré sphere and the Q-based degree of polarization.
//!
//! With `u_k(theta, phi) = cos(theta/2) e^{i phi} h_k + sin(theta/2) v_k`, the
//! projection of a branch onto the SU(2) coherent state of the `N`-photon shell
//! is `exp(-(|h_k|^2+|v_k|^2)/2) u_k^N / sqrt(N!)`. Summing `(N+1)/(4 pi)` times
//! the squared shell projections gives
//!
//! `Q = 1/(4 pi) sum_ij conj(c_i) c_j exp(-(n_i+n_j)/2) (1 + z_ij) exp(z_ij)`,
//! `z_ij = conj(u_i) u_j`,
//!
//! whose diagonal terms reduce to the single-branch `(1 + z) e^z` form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::quadrature::{SphereDirection, SphereQuadrature};
use crate::states::CoherentSuperposition;
use crate::summation::pairwise_sum;
use crate::table::Table;

const INV_4PI: f64 = 1.0 / (4.0 * PI);

/// SU(2) Q-function of a normalized state at one sphere direction.
pub fn q_function(psi: &CoherentSuperposition, dir: SphereDirection) -> Result<f64> {
    psi.require_normalized()?;
    Ok(q_unchecked(psi, dir))
}

fn q_unchecked(psi: &CoherentSuperposition, dir: SphereDirection) -> f64 {
    let (s, c) = (0.5 * dir.theta).sin_cos();
    let rot = Complex64::from_polar(c, dir.phi);
    let terms = psi.terms();
    let mut acc = Complex64::new(0.0, 0.0);
    for bra in terms {
        let ub = rot * bra.h + s * bra.v;
        let nb = bra.h.norm_sqr() + bra.v.norm_sqr();
        for ket in terms {
            let uk = rot * ket.h + s * ket.v;
            let nk = ket.h.norm_sqr() + ket.v.norm_sqr();
            let z = ub.conj() * uk;
            acc += bra.coeff.conj() * ket.coeff * (1.0 + z) * (z - 0.5 * (nb + nk)).exp();
        }
    }
    INV_4PI * acc.re
}

/// `D = 4 pi * integral (Q - 1/4pi)^2 dOmega` and `P = D / (1 + D)`.
pub fn polarization_degree(psi: &CoherentSuperposition, quad: &SphereQuadrature) -> Result<f64> {
    psi.require_normalized()?;
    let d = 4.0 * PI * weighted_sum(quad, |dir| (q_unchecked(psi, dir) - INV_4PI).powi(2));
    Ok(d / (1.0 + d))
}

/// As [`polarization_degree`], but fails with `QuadratureTooCoarse` when doubling
/// `n_theta` moves `P` by more than `tol`.
pub fn polarization_degree_checked(
    psi: &CoherentSuperposition,
    quad: &SphereQuadrature,
    tol: f64,
) -> Result<f64> {
    let coarse = polarization_degree(psi, quad)?;
    let refined = polarization_degree(psi, &quad.refined_theta()?)?;
    if (coarse - refined).abs() > tol {
        return Err(Error::QuadratureTooCoarse {
            what: "sphere",
            coarse,
            refined,
            tol,
        });
    }
    Ok(refined)
}

/// `integral Q dOmega`, which is 1 for every normalized state.
pub fn q_normalization(psi: &CoherentSuperposition, quad: &SphereQuadrature) -> Result<f64> {
    psi.require_normalized()?;
    Ok(weighted_sum(quad, |dir| q_unchecked(psi, dir)))
}

fn weighted_sum<F>(quad: &SphereQuadrature, f: F) -> f64
where
    F: Fn(SphereDirection) -> f64 + Sync,
{
    let vals: Vec<f64> = quad.nodes.par_iter().map(|&(dir, w)| w * f(dir)).collect();
    pairwise_sum(&vals)
}

/// Degree of polarization of `|a,0>`, `|0,a>`, `|a,a>` and `|a,-a>` with real `a = sqrt(|a|^2)`.
///
/// Columns: `alpha_sq, p_horizontal, p_vertical, p_diagonal, p_antidiagonal`.
pub fn polarization_sweep(alpha_sq: &[f64], quad: &SphereQuadrature) -> Result<Table> {
    let mut table = Table::new(&[
        "alpha_sq",
        "p_horizontal",
        "p_vertical",
        "p_diagonal",
        "p_antidiagonal",
    ]);
    table.comment(format!(
        "sphere quadrature = {} x {}",
        quad.n_theta, quad.n_phi
    ));
    let zero = Complex64::new(0.0, 0.0);
    for &a2 in alpha_sq {
        if !(a2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "negative |alpha|^2 = {a2}"
            )));
        }
        let a = Complex64::new(a2.sqrt(), 0.0);
        let mut row = vec![a2];
        for (h, v) in [(a, zero), (zero, a), (a, a), (a, -a)] {
            let psi = FamilySpec::new(Family::Product, h).with_beta(v).build()?;
            row.push(polarization_degree(&psi, quad)?);
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_psi1, make_psi2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_is_uniform() {
        let vac = CoherentSuperposition::vacuum();
        for (t, p) in [(0.0, 0.0), (1.0, 2.0), (PI, 6.0)] {
            let q = q_function(&vac, SphereDirection::new(t, p).unwrap()).unwrap();
            assert!((q - INV_4PI).abs() < 1e-16);
        }
        let quad = SphereQuadrature::new(16, 16).unwrap();
        assert!(polarization_degree(&vac, &quad).unwrap().abs() < 1e-15);
    }

    #[test]
    fn horizontal_coherent_at_north_pole() {
        let s = CoherentSuperposition::product(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let q = q_function(&s, SphereDirection::new(0.0, 0.0).unwrap()).unwrap();
        assert!((q - 2.0 * INV_4PI).abs() < 1e-15);
    }

    #[test]
    fn q_is_normalized() {
        let quad = SphereQuadrature::new(64, 64).unwrap();
        for psi in [
            make_psi1(c(1.0, 0.3), c(-0.5, 1.2)).unwrap(),
            make_psi2(c(1.0, 0.0)).unwrap(),
        ] {
            assert!((q_normalization(&psi, &quad).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn psi2_q_is_even_in_phi_for_real_alpha() {
        let psi = make_psi2(c(1.0, 0.0)).unwrap();
        for (t, p) in [(0.4, 0.3), (2.0, 1.7), (1.1, 3.0)] {
            let a = q_function(&psi, SphereDirection::new(t, p).unwrap()).unwrap();
            let b = q_function(&psi, SphereDirection::new(t, 2.0 * PI - p).unwrap()).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn horizontal_and_vertical_agree() {
        let quad = SphereQuadrature::new(64, 64).unwrap();
        let a = c(2.0, 0.0);
        let ph = polarization_degree(
            &CoherentSuperposition::product(a, c(0.0, 0.0)).unwrap(),
            &quad,
        )
        .unwrap();
        let pv = polarization_degree(
            &CoherentSuperposition::product(c(0.0, 0.0), a).unwrap(),
            &quad,
        )
        .unwrap();
        assert!((ph - pv).abs() < 1e-10);
        assert!(ph > 0.0 && ph < 1.0);
    }

    #[test]
    fn coarse_rule_is_flagged() {
        let s = CoherentSuperposition::product(c(5.0, 0.0), c(0.0, 0.0)).unwrap();
        let quad = SphereQuadrature::new(4, 8).unwrap();
        assert!(matches!(
            polarization_degree_checked(&s, &quad, 1e-6),
            Err(Error::QuadratureTooCoarse { .. })
        ));
    }

    #[test]
    fn sweep_rows() {
        let quad = SphereQuadrature::new(64, 64).unwrap();
        let t = polarization_sweep(&[0.0, 2.0], &quad).unwrap();
        assert!(t.rows[0][1..].iter().all(|p| p.abs() < 1e-14));
        assert!(t.rows[1][3] > t.rows[1][1]);
        assert!((t.rows[1][3] - t.rows[1][4]).abs() < 1e-10);
    }
}
