//! Polarization converters acting on the `(H, V)` amplitude pair.
//!
//! A compensator `C(phi) = diag(e^{i phi/2}, e^{-i phi/2})` is generated by
//! `exp(i phi/2 S1)`. The rotator uses the full-angle mode matrix
//! `R(theta) = [[cos, sin], [-sin, cos]]`, which is `exp(i theta S3)` on Fock
//! space. A device `C(phi2) R(theta) C(phi1)` therefore maps the branch
//! `|alpha, beta>` to
//!
//! `|alpha cos e^{i(phi2+phi1)/2} + beta sin e^{i(phi2-phi1)/2},
//!   beta cos e^{-i(phi2+phi1)/2} - alpha sin e^{-i(phi2-phi1)/2}>`.

use num_complex::Complex64;

use crate::error::Result;
use crate::states::{Amplitude, CoherentSuperposition};

pub type Mat2 = [[Complex64; 2]; 2];

/// One elementary factor of a device, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeviceFactor {
    Compensator(f64),
    Rotator(f64),
}

impl DeviceFactor {
    pub fn matrix(self) -> Mat2 {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            DeviceFactor::Compensator(phi) => [
                [Complex64::from_polar(1.0, 0.5 * phi), zero],
                [zero, Complex64::from_polar(1.0, -0.5 * phi)],
            ],
            DeviceFactor::Rotator(theta) => {
                let (s, c) = theta.sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                    [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
                ]
            }
        }
    }

    fn inverse(self) -> Self {
        match self {
            DeviceFactor::Compensator(phi) => DeviceFactor::Compensator(-phi),
            DeviceFactor::Rotator(theta) => DeviceFactor::Rotator(-theta),
        }
    }
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// A 2x2 unitary on the mode amplitudes plus the factors it was built from.
///
/// `factors` is in order of application: the first entry acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceSpec {
    matrix: Mat2,
    factors: Vec<DeviceFactor>,
}

impl DeviceSpec {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            matrix: [[one, zero], [zero, one]],
            factors: Vec::new(),
        }
    }

    pub fn from_factor(f: DeviceFactor) -> Self {
        Self {
            matrix: f.matrix(),
            factors: vec![f],
        }
    }

    /// `next` applied after `self`.
    pub fn then(&self, next: &DeviceSpec) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&next.factors);
        Self {
            matrix: mat_mul(&next.matrix, &self.matrix),
            factors,
        }
    }

    pub fn inverse(&self) -> Self {
        let m = &self.matrix;
        Self {
            matrix: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
            factors: self.factors.iter().rev().map(|f| f.inverse()).collect(),
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn factors(&self) -> &[DeviceFactor] {
        &self.factors
    }

    pub fn apply_amplitudes(&self, h: Amplitude, v: Amplitude) -> (Amplitude, Amplitude) {
        let m = &self.matrix;
        (m[0][0] * h + m[0][1] * v, m[1][0] * h + m[1][1] * v)
    }

    /// Largest entry of `M^dag M - 1`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let g = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

pub fn compensator(phi: f64) -> DeviceSpec {
    DeviceSpec::from_factor(DeviceFactor::Compensator(phi))
}

pub fn rotator(theta: f64) -> DeviceSpec {
    DeviceSpec::from_factor(DeviceFactor::Rotator(theta))
}

/// Compensator-rotator-compensator `C(phi2) R(theta) C(phi1)`.
pub fn crc(phi1: f64, theta: f64, phi2: f64) -> DeviceSpec {
    compensator(phi1)
        .then(&rotator(theta))
        .then(&compensator(phi2))
}

/// Maps every branch amplitude pair through the device; coefficients are unchanged.
pub fn apply_device(
    psi: &CoherentSuperposition,
    dev: &DeviceSpec,
) -> Result<CoherentSuperposition> {
    psi.require_normalized()?;
    Ok(psi.map_amplitudes(|h, v| dev.apply_amplitudes(h, v)))
}
