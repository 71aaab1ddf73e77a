#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twomode::fock::{stokes_matrices, OperatorMatrix, DEFAULT_N_MAX};
use twomode::{CoherentSuperposition, CoherentTerm};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Uniform on the disc of radius `r`.
pub fn rand_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let rho = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

pub fn random_state(rng: &mut ChaCha8Rng, r: f64, max_branches: usize) -> CoherentSuperposition {
    let k = rng.gen_range(1..=max_branches);
    let terms = (0..k)
        .map(|_| {
            let coeff = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            CoherentTerm::new(coeff, rand_complex(rng, r), rand_complex(rng, r)).unwrap()
        })
        .collect();
    CoherentSuperposition::new(terms)
        .unwrap()
        .normalize()
        .unwrap()
}

/// Number-basis Stokes matrices at the default truncation, built once per test binary.
pub fn stokes_at_default() -> &'static [OperatorMatrix; 4] {
    static S: OnceLock<[OperatorMatrix; 4]> = OnceLock::new();
    S.get_or_init(|| stokes_matrices(DEFAULT_N_MAX))
}

/// Prints the verdict line for one criterion and returns whether it passed.
pub fn report(criterion: u32, passed: bool, detail: &str) -> bool {
    println!(
        "{} criterion {criterion}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}
