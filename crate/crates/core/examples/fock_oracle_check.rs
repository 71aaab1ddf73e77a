// Cross-checks closed forms against the truncated number-basis oracle.

use num_complex::Complex64;
use twomode::fock::{
    fock_from_superposition, oracle_expectation, oracle_reduced_purity, oracle_wigner_point,
    stokes_matrices,
};
use twomode::{concurrence, make_two_branch, stokes_stats, wigner_point, PhasePoint4};

pub fn run_example() -> twomode::Result<()> {
    let n_max = 32;
    let psi = make_two_branch(
        Complex64::new(0.7, -0.4),
        Complex64::new(-1.1, 0.2),
        Complex64::new(0.3, 1.0),
        Complex64::new(0.9, 0.5),
        -1.0,
    )?;
    let v = fock_from_superposition(&psi, n_max)?;
    println!("truncation deficit at n_max = {n_max}: {:.1e}", v.deficit);

    let s = stokes_matrices(n_max);
    let closed = stokes_stats(&psi)?;
    for (k, sk) in s.iter().enumerate() {
        let o = oracle_expectation(&v, sk)?.re;
        println!("<S{k}>: closed {:+.12}  oracle {:+.12}", closed.mean[k], o);
    }

    let pt = PhasePoint4::new(0.3, -0.2, 0.5, 0.1);
    println!(
        "W: closed {:.12}  oracle {:.12}",
        wigner_point(&psi, pt)?,
        oracle_wigner_point(&v, pt)?
    );

    let c_oracle = (2.0 * (1.0 - oracle_reduced_purity(&v))).sqrt();
    println!(
        "C: closed {:.12}  oracle {:.12}",
        concurrence(&psi)?,
        c_oracle
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
