//! Concurrence of two-branch superpositions and converter sweeps.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::devices::{apply_device, crc};
use crate::error::{Error, Result};
use crate::phase_space::GridPolicy;
use crate::states::CoherentSuperposition;
use crate::table::Table;

/// `1 - |<a|b>|^2 = 1 - exp(-|a - b|^2)`.
fn distinguishability(a: Complex64, b: Complex64) -> f64 {
    -(-(a - b).norm_sqr()).exp_m1()
}

/// Concurrence of `c1 |h1, v1> + c2 |h2, v2>`:
///
/// `C = 2 |c1 c2| sqrt((1 - |<h1|h2>|^2)(1 - |<v1|v2>|^2)) / <psi|psi>`.
///
/// For `c1 = c2 = N` this is `sqrt(...) / (1 + Re(<h1|h2><v1|v2>))`; the norm is
/// recomputed from the branch inner products so that either relative sign works.
pub fn concurrence(psi: &CoherentSuperposition) -> Result<f64> {
    psi.require_normalized()?;
    let [t1, t2] = psi.terms() else {
        return Err(Error::UnsupportedBranchCount(psi.len()));
    };
    let num = 2.0
        * t1.coeff.norm()
        * t2.coeff.norm()
        * (distinguishability(t1.h, t2.h) * distinguishability(t1.v, t2.v)).sqrt();
    Ok((num / psi.norm_sqr()).clamp(0.0, 1.0))
}

/// Concurrence (and, given a grid policy, NWF) of `C(phi2) R(theta) C(phi1) psi`
/// on a `(theta, phi1)` grid.
///
/// Columns: `theta_rad, phi1_rad, phi2_rad, concurrence`, followed by
/// `nwf, nwf_error_estimate` when `policy` is set. Rows are ordered by `phi1` then `theta`.
pub fn crc_sweep(
    psi: &CoherentSuperposition,
    thetas: &[f64],
    phi1_list: &[f64],
    phi2: f64,
    policy: Option<&GridPolicy>,
) -> Result<Table> {
    psi.require_normalized()?;
    let points: Vec<(f64, f64)> = phi1_list
        .iter()
        .flat_map(|&p1| thetas.iter().map(move |&t| (t, p1)))
        .collect();
    let rows: Vec<Result<Vec<f64>>> = points
        .par_iter()
        .map(|&(theta, phi1)| {
            let out = apply_device(psi, &crc(phi1, theta, phi2))?;
            let mut row = vec![theta, phi1, phi2, concurrence(&out)?];
            if let Some(policy) = policy {
                let est = policy.estimate(&out)?;
                row.extend([est.delta, est.error_estimate]);
            }
            Ok(row)
        })
        .collect();
    let mut columns = vec!["theta_rad", "phi1_rad", "phi2_rad", "concurrence"];
    if policy.is_some() {
        columns.extend(["nwf", "nwf_error_estimate"]);
    }
    let mut table = Table::new(&columns);
    if let Some(policy) = policy {
        table.comment(policy.describe());
    }
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::make_psi1;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identical_h_amplitudes_give_zero() {
        let a = c(0.4, 0.9);
        let psi = crate::states::make_two_branch(a, c(1.0, 0.0), a, c(-1.0, 0.3), 1.0).unwrap();
        assert_eq!(concurrence(&psi).unwrap(), 0.0);
    }

    #[test]
    fn psi1_values() {
        let far = concurrence(&make_psi1(c(2.0, 0.0), c(-2.0, 0.0)).unwrap()).unwrap();
        let e16 = (-16.0f64).exp();
        assert!((far - (1.0 - e16) / (1.0 + e16)).abs() < 1e-14);
        let near = concurrence(&make_psi1(c(1.0, 0.0), c(-1.0, 0.0)).unwrap()).unwrap();
        assert!((near - 0.964_027_580_075_816_8).abs() < 1e-12);
        let same = concurrence(&make_psi1(c(1.3, -0.2), c(1.3, -0.2)).unwrap()).unwrap();
        assert!(same <= 1e-12);
    }

    #[test]
    fn branch_count_enforced() {
        assert!(matches!(
            concurrence(&CoherentSuperposition::vacuum()),
            Err(Error::UnsupportedBranchCount(1))
        ));
    }
}
