//! Stokes-operator statistics through the normally ordered moment engine.
//!
//! Conventions: `S0 = nH + nV`, `S1 = nH - nV`, `S2 = aH^dag aV + aV^dag aH`,
//! `S3 = i (aV^dag aH - aH^dag aV)`. This `S3` is Hermitian and satisfies
//! `[S1, S2] = 2i S3` cyclically.

use crate::error::Result;
use crate::family::{Family, FamilySpec};
use crate::states::{CoherentSuperposition, Monomial};
use crate::table::Table;

/// Normally ordered polynomials of `S0..S3`.
pub const STOKES: [&[Monomial]; 4] = [
    &[
        Monomial::real(1.0, 1, 1, 0, 0),
        Monomial::real(1.0, 0, 0, 1, 1),
    ],
    &[
        Monomial::real(1.0, 1, 1, 0, 0),
        Monomial::real(-1.0, 0, 0, 1, 1),
    ],
    &[
        Monomial::real(1.0, 1, 0, 0, 1),
        Monomial::real(1.0, 0, 1, 1, 0),
    ],
    &[
        Monomial::imag(1.0, 0, 1, 1, 0),
        Monomial::imag(-1.0, 1, 0, 0, 1),
    ],
];

/// Normally ordered polynomials of `S1^2, S2^2, S3^2`.
pub const STOKES_SQUARED: [&[Monomial]; 3] = [
    &[
        Monomial::real(1.0, 2, 2, 0, 0),
        Monomial::real(1.0, 1, 1, 0, 0),
        Monomial::real(1.0, 0, 0, 2, 2),
        Monomial::real(1.0, 0, 0, 1, 1),
        Monomial::real(-2.0, 1, 1, 1, 1),
    ],
    &[
        Monomial::real(1.0, 2, 0, 0, 2),
        Monomial::real(1.0, 0, 2, 2, 0),
        Monomial::real(2.0, 1, 1, 1, 1),
        Monomial::real(1.0, 1, 1, 0, 0),
        Monomial::real(1.0, 0, 0, 1, 1),
    ],
    &[
        Monomial::real(-1.0, 2, 0, 0, 2),
        Monomial::real(-1.0, 0, 2, 2, 0),
        Monomial::real(2.0, 1, 1, 1, 1),
        Monomial::real(1.0, 1, 1, 0, 0),
        Monomial::real(1.0, 0, 0, 1, 1),
    ],
];

/// Means of `S0..S3`, second moments and variances of `S1..S3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesStats {
    pub mean: [f64; 4],
    pub second_moment: [f64; 3],
    pub variance: [f64; 3],
}

pub fn stokes_stats(psi: &CoherentSuperposition) -> Result<StokesStats> {
    let mut mean = [0.0; 4];
    for (k, poly) in STOKES.iter().enumerate() {
        let z = psi.expect_poly(poly)?;
        debug_assert!(
            z.im.abs() <= 1e-10 * (1.0 + z.re.abs()),
            "non-real Stokes mean {z}"
        );
        mean[k] = z.re;
    }
    let mut second_moment = [0.0; 3];
    let mut variance = [0.0; 3];
    for (k, poly) in STOKES_SQUARED.iter().enumerate() {
        let z = psi.expect_poly(poly)?;
        second_moment[k] = z.re;
        variance[k] = z.re - mean[k + 1] * mean[k + 1];
    }
    Ok(StokesStats {
        mean,
        second_moment,
        variance,
    })
}

/// Variances of `S1..S3` along a family with real `alpha = sqrt(|alpha|^2)`;
/// `beta` is held fixed for the families that use it.
///
/// Columns: `alpha_sq, v1, v2, v3`.
pub fn variance_sweep(
    family: Family,
    beta: num_complex::Complex64,
    alpha_sq: &[f64],
) -> Result<Table> {
    let mut table = Table::new(&["alpha_sq", "v1", "v2", "v3"]);
    table.comment(format!("state = {family}, beta = {},{}", beta.re, beta.im));
    for &a2 in alpha_sq {
        if !(a2 >= 0.0) {
            return Err(crate::Error::InvalidParameter(format!(
                "negative |alpha|^2 = {a2}"
            )));
        }
        let psi = FamilySpec::new(family, a2.sqrt().into())
            .with_beta(beta)
            .build()?;
        let s = stokes_stats(&psi)?;
        table.push(vec![a2, s.variance[0], s.variance[1], s.variance[2]]);
    }
    Ok(table)
}
