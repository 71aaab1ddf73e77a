//! Truncated number-basis oracle.
//!
//! States are dense amplitude arrays over `|nH, nV>` with `0 <= nH, nV <= n_max`
//! and operators are dense `(n_max+1)^2` square matrices. Everything here is
//! computed by direct linear algebra and is deliberately independent of the
//! closed-form branch-pair engines used elsewhere in the crate. It is slow on
//! purpose and never used on a production path.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::devices::{DeviceFactor, DeviceSpec};
use crate::error::{Error, Result};
use crate::phase_space::PhasePoint4;
use crate::quadrature::SphereDirection;
use crate::states::CoherentSuperposition;

/// Default per-mode truncation.
pub const DEFAULT_N_MAX: usize = 48;

/// Largest tolerated norm deficit `1 - <v|v>` after truncation.
pub const MAX_DEFICIT: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Amplitudes indexed by `(nH, nV)`, row-major in `nH`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub n_max: usize,
    pub amps: Vec<Complex64>,
    /// `1 - <v|v> / <psi|psi>` at construction (0 for vectors built directly).
    pub deficit: f64,
}

impl FockVector {
    pub fn zeros(n_max: usize) -> Self {
        Self {
            n_max,
            amps: vec![ZERO; (n_max + 1) * (n_max + 1)],
            deficit: 0.0,
        }
    }

    /// The basis vector `|nh, nv>`.
    pub fn basis(n_max: usize, nh: usize, nv: usize) -> Self {
        let mut v = Self::zeros(n_max);
        let i = v.index(nh, nv);
        v.amps[i] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn side(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn index(&self, nh: usize, nv: usize) -> usize {
        nh * self.side() + nv
    }

    pub fn get(&self, nh: usize, nv: usize) -> Complex64 {
        self.amps[self.index(nh, nv)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Restriction to complete photon-number shells `nH + nV <= n_max`.
    pub fn interior_shells(&self) -> FockVector {
        let mut out = self.clone();
        for nh in 0..=self.n_max {
            for nv in 0..=self.n_max {
                if nh + nv > self.n_max {
                    let i = out.index(nh, nv);
                    out.amps[i] = ZERO;
                }
            }
        }
        out
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// `z^n / sqrt(n!)` for `n = 0..=n_max`.
fn scaled_powers(z: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut t = Complex64::new(1.0, 0.0);
    out.push(t);
    for n in 1..=n_max {
        t = t * z / (n as f64).sqrt();
        out.push(t);
    }
    out
}

/// Expands a superposition in the truncated number basis.
///
/// Fails with `TruncationTooSevere` when more than [`MAX_DEFICIT`] of the norm
/// falls outside the truncated space.
pub fn fock_from_superposition(psi: &CoherentSuperposition, n_max: usize) -> Result<FockVector> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let mut v = FockVector::zeros(n_max);
    let side = n_max + 1;
    for t in psi.terms() {
        let weight = t.coeff * (-0.5 * (t.h.norm_sqr() + t.v.norm_sqr())).exp();
        let ph = scaled_powers(t.h, n_max);
        let pv = scaled_powers(t.v, n_max);
        for (nh, &a) in ph.iter().enumerate() {
            let wa = weight * a;
            for (nv, &b) in pv.iter().enumerate() {
                v.amps[nh * side + nv] += wa * b;
            }
        }
    }
    let target = psi.norm_sqr();
    v.deficit = 1.0 - v.norm_sqr() / target;
    if v.deficit > MAX_DEFICIT {
        return Err(Error::TruncationTooSevere {
            n_max,
            deficit: v.deficit,
        });
    }
    Ok(v)
}

/// Dense square operator on the truncated two-mode space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub n_max: usize,
    /// Row-major, `dim x dim` with `dim = (n_max+1)^2`.
    pub entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(n_max: usize) -> Self {
        let d = (n_max + 1) * (n_max + 1);
        Self {
            n_max,
            entries: vec![ZERO; d * d],
        }
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    fn side(&self) -> usize {
        self.n_max + 1
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    #[inline]
    fn add_at(&mut self, row: usize, col: usize, z: Complex64) {
        let d = self.dim();
        self.entries[row * d + col] += z;
    }

    /// Whether basis index `i` lies in the interior block `nH + nV < n_max`.
    pub fn is_interior(&self, i: usize) -> bool {
        i / self.side() + i % self.side() < self.n_max
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut out = Self::zeros(self.n_max);
        for r in 0..d {
            for c in 0..d {
                out.entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        out
    }

    pub fn matvec(&self, v: &FockVector) -> Result<FockVector> {
        same_dim(self.dim(), v.dim())?;
        let d = self.dim();
        let mut out = FockVector::zeros(self.n_max);
        for (r, slot) in out.amps.iter_mut().enumerate() {
            let row = &self.entries[r * d..(r + 1) * d];
            *slot = row.iter().zip(&v.amps).map(|(a, b)| a * b).sum();
        }
        Ok(out)
    }

    /// `self += scale * a * b`, skipping structural zeros of `a`.
    pub fn add_product(
        &mut self,
        scale: Complex64,
        a: &OperatorMatrix,
        b: &OperatorMatrix,
    ) -> Result<()> {
        same_dim(self.dim(), a.dim())?;
        same_dim(self.dim(), b.dim())?;
        let d = self.dim();
        for i in 0..d {
            for k in 0..d {
                let aik = a.entries[i * d + k];
                if aik == ZERO {
                    continue;
                }
                let s = scale * aik;
                let brow = &b.entries[k * d..(k + 1) * d];
                let orow = &mut self.entries[i * d..(i + 1) * d];
                for (o, bkj) in orow.iter_mut().zip(brow) {
                    *o += s * bkj;
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        let mut out = Self::zeros(self.n_max);
        out.add_product(Complex64::new(1.0, 0.0), self, other)?;
        Ok(out)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
        let mut out = Self::zeros(a.n_max);
        out.add_product(Complex64::new(1.0, 0.0), a, b)?;
        out.add_product(Complex64::new(-1.0, 0.0), b, a)?;
        Ok(out)
    }

    /// `sum_k w_k M_k`.
    pub fn linear_combination(terms: &[(Complex64, &OperatorMatrix)]) -> Result<OperatorMatrix> {
        let n_max = terms
            .first()
            .map(|t| t.1.n_max)
            .ok_or_else(|| Error::InvalidParameter("empty linear combination".into()))?;
        let mut out = Self::zeros(n_max);
        for (w, m) in terms {
            same_dim(out.dim(), m.dim())?;
            for (o, x) in out.entries.iter_mut().zip(&m.entries) {
                *o += w * x;
            }
        }
        Ok(out)
    }

    /// Largest `|M_ij|` over the interior block.
    pub fn interior_max_abs(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for r in (0..d).filter(|&r| self.is_interior(r)) {
            for c in (0..d).filter(|&c| self.is_interior(c)) {
                worst = worst.max(self.entries[r * d + c].norm());
            }
        }
        worst
    }

    /// Largest `|M_ij - conj(M_ji)|` over the full matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..d {
            for c in r..d {
                worst =
                    worst.max((self.entries[r * d + c] - self.entries[c * d + r].conj()).norm());
            }
        }
        worst
    }
}

/// Truncated `a_H` and `a_V`.
pub fn annihilation_matrices(n_max: usize) -> [OperatorMatrix; 2] {
    let side = n_max + 1;
    let mut ah = OperatorMatrix::zeros(n_max);
    let mut av = OperatorMatrix::zeros(n_max);
    for nh in 0..side {
        for nv in 0..side {
            let col = nh * side + nv;
            if nh > 0 {
                ah.add_at(
                    (nh - 1) * side + nv,
                    col,
                    Complex64::new((nh as f64).sqrt(), 0.0),
                );
            }
            if nv > 0 {
                av.add_at(
                    nh * side + nv - 1,
                    col,
                    Complex64::new((nv as f64).sqrt(), 0.0),
                );
            }
        }
    }
    [ah, av]
}

/// `S0..S3` as dense matrices, with the Hermitian `S3 = i (aV^dag aH - aH^dag aV)`.
pub fn stokes_matrices(n_max: usize) -> [OperatorMatrix; 4] {
    let side = n_max + 1;
    let mut s = [
        OperatorMatrix::zeros(n_max),
        OperatorMatrix::zeros(n_max),
        OperatorMatrix::zeros(n_max),
        OperatorMatrix::zeros(n_max),
    ];
    for nh in 0..side {
        for nv in 0..side {
            let col = nh * side + nv;
            s[0].add_at(col, col, Complex64::new((nh + nv) as f64, 0.0));
            s[1].add_at(col, col, Complex64::new(nh as f64 - nv as f64, 0.0));
            // aH^dag aV : |nh, nv> -> sqrt((nh+1) nv) |nh+1, nv-1>
            if nh < n_max && nv > 0 {
                let row = (nh + 1) * side + nv - 1;
                let x = (((nh + 1) * nv) as f64).sqrt();
                s[2].add_at(row, col, Complex64::new(x, 0.0));
                s[3].add_at(row, col, Complex64::new(0.0, -x));
            }
            // aV^dag aH : |nh, nv> -> sqrt(nh (nv+1)) |nh-1, nv+1>
            if nh > 0 && nv < n_max {
                let row = (nh - 1) * side + nv + 1;
                let x = ((nh * (nv + 1)) as f64).sqrt();
                s[2].add_at(row, col, Complex64::new(x, 0.0));
                s[3].add_at(row, col, Complex64::new(0.0, x));
            }
        }
    }
    s
}

/// `<v|M|v> / <v|v>`.
pub fn oracle_expectation(v: &FockVector, m: &OperatorMatrix) -> Result<Complex64> {
    let mv = m.matvec(v)?;
    Ok(v.inner(&mv)? / v.norm_sqr())
}

/// `<v|A B|v> / <v|v>`, evaluated as `<A^dag v | B v>`.
pub fn oracle_expectation_product(
    v: &FockVector,
    a: &OperatorMatrix,
    b: &OperatorMatrix,
) -> Result<Complex64> {
    let left = a.adjoint().matvec(v)?;
    let right = b.matvec(v)?;
    Ok(left.inner(&right)? / v.norm_sqr())
}

/// Matrix of the displacement operator `<m|D(beta)|n>` for `m, n <= n_max`.
///
/// Columns follow `D|n> = (a^dag - beta*) D|n-1> / sqrt(n)` from the exact
/// coherent first column, so entries are those of the untruncated operator.
pub fn displacement_matrix(beta: Complex64, n_max: usize) -> Vec<Vec<Complex64>> {
    let side = n_max + 1;
    let mut d = vec![vec![ZERO; side]; side];
    let first = scaled_powers(beta, n_max);
    let g = (-0.5 * beta.norm_sqr()).exp();
    for m in 0..side {
        d[m][0] = g * first[m];
    }
    for n in 1..side {
        let inv = 1.0 / (n as f64).sqrt();
        for m in 0..side {
            let up = if m > 0 {
                (m as f64).sqrt() * d[m - 1][n - 1]
            } else {
                ZERO
            };
            d[m][n] = (up - beta.conj() * d[m][n - 1]) * inv;
        }
    }
    d
}

/// Two-mode Wigner function by displaced parity,
/// `W = (1/pi^2) <v| D(xi1) D(xi2) Pi Pi D^dag(xi1) D^dag(xi2) |v> / <v|v>`,
/// using `D(xi) Pi D^dag(xi) = D(2 xi) Pi` with `xi = (q + i p) / sqrt 2`.
pub fn oracle_wigner_point(v: &FockVector, point: PhasePoint4) -> Result<f64> {
    let side = v.side();
    let xi1 = Complex64::new(point.q1, point.p1) / std::f64::consts::SQRT_2;
    let xi2 = Complex64::new(point.q2, point.p2) / std::f64::consts::SQRT_2;
    let d1 = displacement_matrix(2.0 * xi1, v.n_max);
    let d2 = displacement_matrix(2.0 * xi2, v.n_max);
    let sign = |n: usize| if n.is_multiple_of(2) { 1.0 } else { -1.0 };

    // y[m1][n2] = sum_n1 D1[m1][n1] (-1)^n1 v[n1][n2]
    let mut y = vec![ZERO; side * side];
    for m1 in 0..side {
        for n1 in 0..side {
            let f = d1[m1][n1] * sign(n1);
            if f == ZERO {
                continue;
            }
            for n2 in 0..side {
                y[m1 * side + n2] += f * v.amps[n1 * side + n2];
            }
        }
    }
    let mut acc = ZERO;
    for m1 in 0..side {
        for m2 in 0..side {
            let mut x = ZERO;
            for n2 in 0..side {
                x += y[m1 * side + n2] * sign(n2) * d2[m2][n2];
            }
            acc += v.amps[m1 * side + m2].conj() * x;
        }
    }
    Ok(acc.re / (PI * PI * v.norm_sqr()))
}

/// `Tr(rho_H^2)` of the H-mode reduced state.
pub fn oracle_reduced_purity(v: &FockVector) -> f64 {
    let side = v.side();
    let norm = v.norm_sqr();
    let mut purity = 0.0;
    for i in 0..side {
        for j in 0..side {
            let rho_ij: Complex64 = (0..side)
                .map(|k| v.amps[i * side + k] * v.amps[j * side + k].conj())
                .sum();
            purity += rho_ij.norm_sqr();
        }
    }
    purity / (norm * norm)
}

/// Frobenius norms of `[rho, S1]` and `[rho, S3]` on the interior block.
pub fn oracle_unpolarized_check(
    v: &FockVector,
    stokes: &[OperatorMatrix; 4],
) -> Result<(f64, f64)> {
    let norm = v.norm_sqr();
    let mut out = [0.0; 2];
    for (slot, s) in out.iter_mut().zip([&stokes[1], &stokes[3]]) {
        // rho S - S rho = |v><Sv| - |Sv><v| for Hermitian S
        let w = s.matvec(v)?;
        let interior: Vec<usize> = (0..v.dim()).filter(|&i| s.is_interior(i)).collect();
        let mut sum = 0.0;
        for &i in &interior {
            for &j in &interior {
                let e = v.amps[i] * w.amps[j].conj() - w.amps[i] * v.amps[j].conj();
                sum += e.norm_sqr();
            }
        }
        *slot = sum.sqrt() / norm;
    }
    Ok((out[0], out[1]))
}

/// `exp(t G)` for a small real square matrix by scaling and squaring.
fn expm_real(g: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    let n = g.len();
    let norm: f64 = g
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t.abs();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = t / 2f64.powi(squarings as i32);
    let a: Vec<Vec<f64>> = g
        .iter()
        .map(|r| r.iter().map(|x| x * scale).collect())
        .collect();
    let matmul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let mut z = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i][k];
                if xik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    z[i][j] += xik * y[k][j];
                }
            }
        }
        z
    };
    let mut result: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = result.clone();
    for k in 1..=30 {
        term = matmul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Applies the device factors as exponentials of their Fock-space generators:
/// compensator `exp(i phi/2 S1)` and rotator `exp(theta (aH^dag aV - aV^dag aH)) = exp(i theta S3)`.
///
/// Both commute with `S0`, so they act shell by shell and are exact on the
/// complete shells `nH + nV <= n_max`; amplitudes in incomplete shells are dropped.
pub fn oracle_apply_device(v: &FockVector, dev: &DeviceSpec) -> Result<FockVector> {
    let n_max = v.n_max;
    let mut out = v.interior_shells();
    for f in dev.factors() {
        match *f {
            DeviceFactor::Compensator(phi) => {
                for nh in 0..=n_max {
                    for nv in 0..=(n_max - nh) {
                        let i = out.index(nh, nv);
                        out.amps[i] *=
                            Complex64::from_polar(1.0, 0.5 * phi * (nh as f64 - nv as f64));
                    }
                }
            }
            DeviceFactor::Rotator(theta) => {
                for shell in 0..=n_max {
                    // basis k -> |k, shell - k>
                    let dim = shell + 1;
                    let mut gen = vec![vec![0.0; dim]; dim];
                    for k in 0..dim {
                        let nv = shell - k;
                        if nv > 0 {
                            gen[k + 1][k] += (((k + 1) * nv) as f64).sqrt();
                        }
                        if k > 0 {
                            gen[k - 1][k] -= ((k * (nv + 1)) as f64).sqrt();
                        }
                    }
                    let u = expm_real(&gen, theta);
                    let old: Vec<Complex64> = (0..dim).map(|k| out.get(k, shell - k)).collect();
                    for (r, urow) in u.iter().enumerate() {
                        let val: Complex64 = urow.iter().zip(&old).map(|(x, a)| a * *x).sum();
                        let i = out.index(r, shell - r);
                        out.amps[i] = val;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `sum_N (N+1)/(4 pi) |<N; theta, phi|v>|^2 / <v|v>` over complete shells, with
/// `|N; theta, phi> = sum_k sqrt(C(N,k)) cos^k(theta/2) sin^{N-k}(theta/2) e^{-i k phi} |k, N-k>`.
pub fn oracle_q_function(v: &FockVector, dir: SphereDirection) -> f64 {
    let (s, c) = (0.5 * dir.theta).sin_cos();
    let mut total = 0.0;
    let mut binom = vec![1.0f64];
    for shell in 0..=v.n_max {
        if shell > 0 {
            let mut next = vec![1.0; shell + 1];
            for k in 1..shell {
                next[k] = binom[k - 1] + binom[k];
            }
            binom = next;
        }
        let proj: Complex64 = (0..=shell)
            .map(|k| {
                binom[k].sqrt()
                    * c.powi(k as i32)
                    * s.powi((shell - k) as i32)
                    * Complex64::from_polar(1.0, k as f64 * dir.phi)
                    * v.get(k, shell - k)
            })
            .sum();
        total += (shell + 1) as f64 * proj.norm_sqr();
    }
    total / (4.0 * PI * v.norm_sqr())
}

/// Position density of the H mode, `sum_nV |sum_nH v[nH, nV] phi_nH(q)|^2 / <v|v>`,
/// with Hermite functions `phi_n` (`x = (a + a^dag)/sqrt 2`).
pub fn oracle_position_density_h(v: &FockVector, q: f64) -> f64 {
    let side = v.side();
    let mut herm = vec![0.0; side];
    herm[0] = PI.powf(-0.25) * (-0.5 * q * q).exp();
    if side > 1 {
        herm[1] = std::f64::consts::SQRT_2 * q * herm[0];
    }
    for n in 1..side - 1 {
        herm[n + 1] = (2.0 / (n + 1) as f64).sqrt() * q * herm[n]
            - (n as f64 / (n + 1) as f64).sqrt() * herm[n - 1];
    }
    let mut total = 0.0;
    for nv in 0..side {
        let amp: Complex64 = (0..side).map(|nh| v.amps[nh * side + nv] * herm[nh]).sum();
        total += amp.norm_sqr();
    }
    total / v.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_psi1, make_psi2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_and_single_photon_amplitudes() {
        let v = fock_from_superposition(&CoherentSuperposition::vacuum(), 4).unwrap();
        assert_eq!(v.get(0, 0), c(1.0, 0.0));
        assert!(v.amps.iter().skip(1).all(|a| *a == ZERO));
        let s = CoherentSuperposition::product(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let v = fock_from_superposition(&s, 40).unwrap();
        assert!((v.get(1, 0) - (-0.5f64).exp()).norm() < 1e-15);
        assert!(v.deficit.abs() < 1e-12);
    }

    #[test]
    fn even_cat_has_no_odd_single_occupancy() {
        let v = fock_from_superposition(&make_psi2(c(1.0, 0.0)).unwrap(), 30).unwrap();
        assert!(v.get(1, 0).norm() < 1e-16);
        assert!(v.get(1, 1).norm() > 1e-3);
    }

    #[test]
    fn truncation_is_reported() {
        let s = CoherentSuperposition::product(c(4.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(
            fock_from_superposition(&s, 10),
            Err(Error::TruncationTooSevere { .. })
        ));
        assert!(fock_from_superposition(&s, 0).is_err());
    }

    #[test]
    fn stokes_on_basis_states() {
        let s = stokes_matrices(6);
        let v = FockVector::basis(6, 2, 3);
        assert!((oracle_expectation(&v, &s[0]).unwrap() - 5.0).norm() < 1e-15);
        let h = FockVector::basis(6, 1, 0);
        assert!((oracle_expectation(&h, &s[1]).unwrap() - 1.0).norm() < 1e-15);
        let vac = FockVector::basis(6, 0, 0);
        assert!(oracle_expectation(&vac, &s[0]).unwrap().norm() < 1e-15);
        for m in &s {
            assert!(m.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn commutators_small_truncation() {
        let s = stokes_matrices(8);
        let two_i = c(0.0, 2.0);
        for (k, l, m) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let comm = OperatorMatrix::commutator(&s[k], &s[l]).unwrap();
            let defect =
                OperatorMatrix::linear_combination(&[(c(1.0, 0.0), &comm), (-two_i, &s[m])])
                    .unwrap();
            assert!(defect.interior_max_abs() < 1e-12);
        }
    }

    #[test]
    fn bosonic_commutators() {
        let n = 6;
        let [ah, av] = annihilation_matrices(n);
        let one = c(1.0, 0.0);
        for (i, a) in [&ah, &av].into_iter().enumerate() {
            for (j, b) in [&ah, &av].into_iter().enumerate() {
                let comm = OperatorMatrix::commutator(a, &b.adjoint()).unwrap();
                let mut id = OperatorMatrix::zeros(n);
                if i == j {
                    let dim = id.dim();
                    for k in 0..dim {
                        id.entries[k * dim + k] = one;
                    }
                }
                let d = OperatorMatrix::linear_combination(&[(one, &comm), (-one, &id)]).unwrap();
                assert!(d.interior_max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let s = stokes_matrices(3);
        let v = FockVector::zeros(4);
        assert!(matches!(
            oracle_expectation(&v, &s[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wigner_of_vacuum_and_coherent_peak() {
        let vac = FockVector::basis(10, 0, 0);
        let w = oracle_wigner_point(&vac, PhasePoint4::default()).unwrap();
        assert!((w - 1.0 / (PI * PI)).abs() < 1e-15);
        let (a, b) = (c(0.8, -0.5), c(-1.0, 0.3));
        let v =
            fock_from_superposition(&CoherentSuperposition::product(a, b).unwrap(), 40).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        let pt = PhasePoint4 {
            q1: r2 * a.re,
            p1: r2 * a.im,
            q2: r2 * b.re,
            p2: r2 * b.im,
        };
        assert!((oracle_wigner_point(&v, pt).unwrap() - 1.0 / (PI * PI)).abs() < 1e-7);
    }

    #[test]
    fn purity_cases() {
        let prod = fock_from_superposition(
            &CoherentSuperposition::product(c(1.0, 0.2), c(-0.7, 0.0)).unwrap(),
            30,
        )
        .unwrap();
        assert!((oracle_reduced_purity(&prod) - 1.0).abs() < 1e-12);
        let bell =
            fock_from_superposition(&make_psi1(c(2.0, 0.0), c(-2.0, 0.0)).unwrap(), 40).unwrap();
        assert!((oracle_reduced_purity(&bell) - 0.5).abs() < 1e-6);
        let same =
            fock_from_superposition(&make_psi1(c(1.0, 0.0), c(1.0, 0.0)).unwrap(), 30).unwrap();
        assert!((oracle_reduced_purity(&same) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn device_identity_and_number_conservation() {
        let s = stokes_matrices(30);
        let v =
            fock_from_superposition(&make_psi1(c(1.0, 0.5), c(-0.3, 0.8)).unwrap(), 30).unwrap();
        let same = oracle_apply_device(&v, &DeviceSpec::identity()).unwrap();
        assert!((same.inner(&v).unwrap() - v.norm_sqr()).norm() < 1e-14);
        let out = oracle_apply_device(&v, &crate::devices::crc(0.4, 0.9, -0.3)).unwrap();
        let n_in = oracle_expectation(&v, &s[0]).unwrap();
        let n_out = oracle_expectation(&out, &s[0]).unwrap();
        assert!((n_in - n_out).norm() < 1e-10);
        assert!((out.norm_sqr() - v.norm_sqr()).abs() < 1e-10);
    }

    #[test]
    fn expm_matches_rotation() {
        let g = vec![vec![0.0, 1.0], vec![-1.0, 0.0]];
        let u = expm_real(&g, 2.3);
        assert!((u[0][0] - 2.3f64.cos()).abs() < 1e-14);
        assert!((u[0][1] - 2.3f64.sin()).abs() < 1e-14);
    }
}
