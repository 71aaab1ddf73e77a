// Concurrence of psi1 and of its image under the compensator-rotator-compensator device.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use twomode::table::linspace;
use twomode::{apply_device, concurrence, crc, crc_sweep, make_psi1};

pub fn run_example() -> twomode::Result<()> {
    let beta = Complex64::new(2f64.sqrt(), 0.0);
    let psi = make_psi1(beta - 2.0, beta)?;
    println!("input concurrence: {:.6}", concurrence(&psi)?);

    let out = apply_device(&psi, &crc(0.0, PI / 4.0, 0.0))?;
    for t in out.terms() {
        println!("branch after R(pi/4): h = {:.4}, v = {:.4}", t.h, t.v);
    }
    println!(
        "concurrence at theta = pi/4, phi1 = 0: {:.2e}",
        concurrence(&out)?
    );

    let table = crc_sweep(
        &psi,
        &linspace(0.0, FRAC_PI_2, 5),
        &[0.0, PI / 8.0],
        0.0,
        None,
    )?;
    print!("{}", table.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
