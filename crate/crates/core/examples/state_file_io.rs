// Writes a superposition in the interchange format, reads it back and inspects it.

use num_complex::Complex64;
use twomode::experiments::inspect_text;
use twomode::{make_psi3, state_file};

pub fn run_example() -> twomode::Result<()> {
    let psi = make_psi3(Complex64::new(2.0, 0.0))?;
    let dir = std::env::temp_dir().join(format!("twomode-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("psi3.csv");

    state_file::write(&path, &psi)?;
    print!("{}", std::fs::read_to_string(&path)?);
    let back = state_file::read(&path)?;
    assert_eq!(back, psi);
    print!("{}", inspect_text(&back)?);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
