// Negativity volume of the Wigner function.
//
// Two-branch states are integrated on a single-mode plane after a passive
// mode rotation; the full 4D grid gives the same number at far higher cost.

use num_complex::Complex64;
use twomode::phase_space::GridPolicy;
use twomode::{make_psi1, nwf, CoherentSuperposition, CoherentTerm, PhaseGrid};

pub fn run_example() -> twomode::Result<()> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let policy = GridPolicy::default();

    // near the one-photon limit the odd cat approaches 4 e^{-1/2} - 2
    let odd = CoherentSuperposition::new(vec![
        CoherentTerm::new(c(1.0), c(0.1), c(0.0))?,
        CoherentTerm::new(c(-1.0), c(-0.1), c(0.0))?,
    ])?
    .normalize()?;
    let est = policy.estimate(&odd)?;
    println!(
        "odd cat (0.1): delta = {:.6} +- {:.1e}, limit {:.6}",
        est.delta,
        est.error_estimate,
        4.0 * (-0.5f64).exp() - 2.0
    );

    for a in [2.0, 1.0, 0.0] {
        let psi = make_psi1(c(a), c(2.0))?;
        let est = policy.estimate(&psi)?;
        println!(
            "psi1({a}, 2): delta = {:.6} +- {:.1e}",
            est.delta, est.error_estimate
        );
    }

    let psi = make_psi1(c(1.0), c(2.0))?;
    let coarse = nwf(&psi, &PhaseGrid::default_for(&psi)?.with_nodes(48)?)?;
    println!(
        "same state on a 48^4 grid: delta = {:.6} (estimate {:.1e})",
        coarse.delta, coarse.error_estimate
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
