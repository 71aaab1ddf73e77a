// Point values and a 2D slice of the two-mode Wigner function of psi1(1, -1).

use num_complex::Complex64;
use twomode::phase_space::{Coord, SlicePlane};
use twomode::table::linspace;
use twomode::{make_psi1, wigner_point, wigner_slice, CoherentSuperposition, PhasePoint4};

pub fn run_example() -> twomode::Result<()> {
    let vac = wigner_point(&CoherentSuperposition::vacuum(), PhasePoint4::default())?;
    println!("vacuum at the origin: {vac:.7} (1/pi^2)");

    let psi = make_psi1(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))?;
    let plane = SlicePlane {
        x_axis: Coord::Q1,
        y_axis: Coord::P1,
        fixed: PhasePoint4::default(),
        xs: linspace(-3.0, 3.0, 31),
        ys: linspace(-3.0, 3.0, 31),
    };
    let table = wigner_slice(&psi, &plane)?;
    let w = table.column("w").unwrap_or_default();
    let min = w.iter().copied().fold(f64::INFINITY, f64::min);
    let max = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!(
        "slice q1,p1 at q2 = p2 = 0: {} points, W in [{min:.5}, {max:.5}]",
        table.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
