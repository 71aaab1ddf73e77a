//! Superpositions of two-mode coherent states.
//!
//! A state is a weighted list of product branches `c_k |h_k, v_k>` where `h_k`
//! and `v_k` are the coherent amplitudes of the horizontal and vertical modes.
//! Every expectation value in the crate is reduced to sums over branch pairs of
//! normally ordered monomials, evaluated by [`CoherentSuperposition::expect_normal_ordered`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coherent-state field amplitude (dimensionless, `alpha = (q + i p) / sqrt 2`).
pub type Amplitude = Complex64;

/// Threshold below which `<psi|psi>` is treated as the zero vector.
pub const EPS_NORM: f64 = 1e-14;

/// Tolerance on the unit norm of a state flagged as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Largest amplitude modulus the numerical defaults are tuned for.
pub const SUPPORTED_AMPLITUDE: f64 = 6.0;

/// Single-mode coherent overlap `<g|a> = exp(g* a - (|g|^2 + |a|^2) / 2)`.
pub fn overlap(a: Amplitude, g: Amplitude) -> Complex64 {
    (g.conj() * a - 0.5 * (g.norm_sqr() + a.norm_sqr())).exp()
}

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// One branch `coeff |h, v>` of a superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentTerm {
    pub coeff: Complex64,
    /// H-mode amplitude.
    pub h: Amplitude,
    /// V-mode amplitude.
    pub v: Amplitude,
}

impl CoherentTerm {
    pub fn new(coeff: Complex64, h: Amplitude, v: Amplitude) -> Result<Self> {
        check_finite(coeff, "branch coefficient")?;
        check_finite(h, "H amplitude")?;
        check_finite(v, "V amplitude")?;
        Ok(Self { coeff, h, v })
    }

    /// Overlap of the bare kets, `<self.h, self.v | other.h, other.v>`.
    pub fn ket_overlap(&self, other: &CoherentTerm) -> Complex64 {
        overlap(other.h, self.h) * overlap(other.v, self.v)
    }
}

/// Normalized or unnormalized superposition of two-mode coherent states.
///
/// Branches are never merged, even when two of them share amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSuperposition {
    terms: Vec<CoherentTerm>,
    normalized: bool,
}

impl CoherentSuperposition {
    /// Builds an (unnormalized) superposition. At least one branch is required.
    pub fn new(terms: Vec<CoherentTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyState);
        }
        for t in &terms {
            CoherentTerm::new(t.coeff, t.h, t.v)?;
        }
        Ok(Self {
            terms,
            normalized: false,
        })
    }

    /// Builds a superposition and marks it normalized after checking the norm.
    pub fn new_normalized(terms: Vec<CoherentTerm>) -> Result<Self> {
        let mut s = Self::new(terms)?;
        let n = s.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state flagged normalized has <psi|psi> = {n}"
            )));
        }
        s.normalized = true;
        Ok(s)
    }

    /// The product state `|h, v>` (already unit norm).
    pub fn product(h: Amplitude, v: Amplitude) -> Result<Self> {
        let t = CoherentTerm::new(Complex64::new(1.0, 0.0), h, v)?;
        Ok(Self {
            terms: vec![t],
            normalized: true,
        })
    }

    pub fn vacuum() -> Self {
        Self {
            terms: vec![CoherentTerm {
                coeff: Complex64::new(1.0, 0.0),
                h: Complex64::new(0.0, 0.0),
                v: Complex64::new(0.0, 0.0),
            }],
            normalized: true,
        }
    }

    /// `c1 |h1, v1> + c2 |h2, v2>`, unnormalized.
    pub fn two_branch(
        c1: Complex64,
        (h1, v1): (Amplitude, Amplitude),
        c2: Complex64,
        (h2, v2): (Amplitude, Amplitude),
    ) -> Result<Self> {
        Self::new(vec![
            CoherentTerm::new(c1, h1, v1)?,
            CoherentTerm::new(c2, h2, v2)?,
        ])
    }

    pub fn terms(&self) -> &[CoherentTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::UnnormalizedState)
        }
    }

    /// Largest coherent amplitude modulus over all branches and both modes.
    pub fn max_amplitude(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| [t.h.norm(), t.v.norm()])
            .fold(0.0, f64::max)
    }

    /// Branch-overlap Gram matrix `G[i][j] = <i|j>` (bare kets, no coefficients).
    pub fn gram(&self) -> Vec<Vec<Complex64>> {
        self.terms
            .iter()
            .map(|ti| self.terms.iter().map(|tj| ti.ket_overlap(tj)).collect())
            .collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        inner_product(self, self).re
    }

    /// Rescales the coefficients by one positive real factor so that `<psi|psi> = 1`.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > EPS_NORM) {
            return Err(Error::ZeroNormState { norm_sqr: n });
        }
        let scale = n.sqrt().recip();
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|t| CoherentTerm {
                    coeff: t.coeff * scale,
                    ..*t
                })
                .collect(),
            normalized: true,
        })
    }

    /// Multiplies every coefficient by `exp(i chi)`.
    pub fn with_global_phase(&self, chi: f64) -> Self {
        let ph = Complex64::from_polar(1.0, chi);
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| CoherentTerm {
                    coeff: t.coeff * ph,
                    ..*t
                })
                .collect(),
            normalized: self.normalized,
        }
    }

    /// Applies the local displacement `D_H(dh) (x) D_V(dv)`.
    ///
    /// Amplitudes shift by `(dh, dv)` and each coefficient picks up the phase
    /// `exp(i Im(d a*))` of `D(d)|a> = exp(i Im(d a*)) |a + d>`, so this is a
    /// genuine local unitary rather than a bare relabeling of amplitudes.
    pub fn displaced(&self, dh: Amplitude, dv: Amplitude) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let phase = (dh * t.h.conj()).im + (dv * t.v.conj()).im;
                    CoherentTerm {
                        coeff: t.coeff * Complex64::from_polar(1.0, phase),
                        h: t.h + dh,
                        v: t.v + dv,
                    }
                })
                .collect(),
            normalized: self.normalized,
        }
    }

    /// Maps each branch by `f`; coefficients untouched.
    pub(crate) fn map_amplitudes<F>(&self, f: F) -> Self
    where
        F: Fn(Amplitude, Amplitude) -> (Amplitude, Amplitude),
    {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let (h, v) = f(t.h, t.v);
                    CoherentTerm {
                        coeff: t.coeff,
                        h,
                        v,
                    }
                })
                .collect(),
            normalized: self.normalized,
        }
    }

    /// `<psi| a_H^dag^m a_H^n a_V^dag^p a_V^q |psi>` for a normalized state.
    pub fn expect_normal_ordered(&self, m: u32, n: u32, p: u32, q: u32) -> Result<Complex64> {
        self.require_normalized()?;
        Ok(self.pair_sum(|bra, ket| {
            bra.h.conj().powu(m) * ket.h.powu(n) * bra.v.conj().powu(p) * ket.v.powu(q)
        }))
    }

    /// Expectation of a polynomial in normally ordered monomials.
    pub fn expect_poly(&self, poly: &[Monomial]) -> Result<Complex64> {
        self.require_normalized()?;
        Ok(self.pair_sum(|bra, ket| {
            poly.iter()
                .map(|mono| mono.eval(bra, ket))
                .fold(Complex64::new(0.0, 0.0), |acc, x| acc + x)
        }))
    }

    /// `sum_ij conj(c_i) c_j <i|j> f(i, j)` in fixed (i, j) order.
    fn pair_sum<F>(&self, f: F) -> Complex64
    where
        F: Fn(&CoherentTerm, &CoherentTerm) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for bra in &self.terms {
            for ket in &self.terms {
                acc += bra.coeff.conj() * ket.coeff * bra.ket_overlap(ket) * f(bra, ket);
            }
        }
        acc
    }
}

/// `weight * a_H^dag^m a_H^n a_V^dag^p a_V^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub weight: Complex64,
    pub powers: [u32; 4],
}

impl Monomial {
    pub const fn real(weight: f64, m: u32, n: u32, p: u32, q: u32) -> Self {
        Self {
            weight: Complex64::new(weight, 0.0),
            powers: [m, n, p, q],
        }
    }

    pub const fn imag(weight: f64, m: u32, n: u32, p: u32, q: u32) -> Self {
        Self {
            weight: Complex64::new(0.0, weight),
            powers: [m, n, p, q],
        }
    }

    /// Matrix element between coherent branches divided by their overlap.
    pub fn eval(&self, bra: &CoherentTerm, ket: &CoherentTerm) -> Complex64 {
        let [m, n, p, q] = self.powers;
        self.weight * bra.h.conj().powu(m) * ket.h.powu(n) * bra.v.conj().powu(p) * ket.v.powu(q)
    }
}

/// `<psi|phi>` summed over all branch pairs.
pub fn inner_product(psi: &CoherentSuperposition, phi: &CoherentSuperposition) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for bra in &psi.terms {
        for ket in &phi.terms {
            acc += bra.coeff.conj() * ket.coeff * bra.ket_overlap(ket);
        }
    }
    acc
}

/// `N (|alpha, beta> + sign |gamma, lambda>)`, normalized.
pub fn make_two_branch(
    alpha: Amplitude,
    beta: Amplitude,
    gamma: Amplitude,
    lambda: Amplitude,
    sign: f64,
) -> Result<CoherentSuperposition> {
    let one = Complex64::new(1.0, 0.0);
    CoherentSuperposition::two_branch(one, (alpha, beta), one * sign, (gamma, lambda))?.normalize()
}

/// `N1 (|alpha, beta> + |beta, alpha>)`.
pub fn make_psi1(alpha: Amplitude, beta: Amplitude) -> Result<CoherentSuperposition> {
    make_two_branch(alpha, beta, beta, alpha, 1.0)
}

/// `N2 (|-alpha, -alpha> + |alpha, alpha>)`.
pub fn make_psi2(alpha: Amplitude) -> Result<CoherentSuperposition> {
    make_two_branch(-alpha, -alpha, alpha, alpha, 1.0)
}

/// `N3 (|alpha, 0> + |0, alpha>)`.
pub fn make_psi3(alpha: Amplitude) -> Result<CoherentSuperposition> {
    let zero = Complex64::new(0.0, 0.0);
    make_two_branch(alpha, zero, zero, alpha, 1.0)
}
