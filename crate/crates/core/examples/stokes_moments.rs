// Stokes means and variances of product states and of the symmetric
// superpositions, followed by a variance sweep along psi1.

use num_complex::Complex64;
use twomode::{
    make_psi1, make_psi2, make_psi3, stokes_stats, variance_sweep, CoherentSuperposition, Family,
};

pub fn run_example() -> twomode::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);

    let product = CoherentSuperposition::product(c(2.0, 0.0), c(1.0, 0.0))?;
    let s = stokes_stats(&product)?;
    println!("|2,1>: means {:?}, variances {:?}", s.mean, s.variance);

    for (name, psi) in [
        ("psi1(1,2)", make_psi1(c(1.0, 0.0), c(2.0, 0.0))?),
        ("psi2(1.5)", make_psi2(c(1.5, 0.0))?),
        ("psi3(2)", make_psi3(c(2.0, 0.0))?),
    ] {
        let s = stokes_stats(&psi)?;
        println!(
            "{name}: <S1> = {:.2e}, <S3> = {:.2e}, V = {:?}",
            s.mean[1], s.mean[3], s.variance
        );
    }

    let table = variance_sweep(Family::Psi1, c(2.0, 0.0), &[0.0, 1.0, 4.0, 9.0])?;
    print!("{}", table.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
