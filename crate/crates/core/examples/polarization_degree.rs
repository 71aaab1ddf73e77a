// SU(2) Q-function on the Poincare sphere and the Q-based degree of polarization.

use std::f64::consts::PI;

use num_complex::Complex64;
use twomode::polarization::q_normalization;
use twomode::{
    polarization_degree, q_function, CoherentSuperposition, SphereDirection, SphereQuadrature,
};

pub fn run_example() -> twomode::Result<()> {
    let quad = SphereQuadrature::default_rule();
    let zero = Complex64::new(0.0, 0.0);

    let h = CoherentSuperposition::product(Complex64::new(1.0, 0.0), zero)?;
    let pole = q_function(&h, SphereDirection::new(0.0, 0.0)?)?;
    println!(
        "Q(|1,0>) at the H pole = {pole:.7} (2/4pi = {:.7})",
        2.0 / (4.0 * PI)
    );
    println!("integral of Q = {:.12}", q_normalization(&h, &quad)?);

    println!("|a|^2  P(|a,0>)  1 - 2/|a|^2");
    for a2 in [4.0f64, 16.0, 25.0, 36.0] {
        let psi = CoherentSuperposition::product(Complex64::new(a2.sqrt(), 0.0), zero)?;
        let p = polarization_degree(&psi, &quad)?;
        println!("{a2:5}  {p:.5}  {:.5}", 1.0 - 2.0 / a2);
    }
    println!(
        "P(vacuum) = {}",
        polarization_degree(&CoherentSuperposition::vacuum(), &quad)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
