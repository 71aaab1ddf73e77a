//! Named state families addressable from the command line.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{
    make_psi1, make_psi2, make_psi3, make_two_branch, Amplitude, CoherentSuperposition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `|alpha, beta>`
    Product,
    /// `N1 (|alpha, beta> + |beta, alpha>)`
    Psi1,
    /// `N2 (|-alpha, -alpha> + |alpha, alpha>)`
    Psi2,
    /// `N3 (|alpha, 0> + |0, alpha>)`
    Psi3,
    /// `N (|alpha, beta> + |gamma, lambda>)`
    PsiPlus,
    /// `N (|alpha, beta> - |gamma, lambda>)`
    PsiMinus,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Product,
        Family::Psi1,
        Family::Psi2,
        Family::Psi3,
        Family::PsiPlus,
        Family::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Product => "product",
            Family::Psi1 => "psi1",
            Family::Psi2 => "psi2",
            Family::Psi3 => "psi3",
            Family::PsiPlus => "psi-plus",
            Family::PsiMinus => "psi-minus",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown state family '{s}'")))
    }
}

/// A family plus its amplitudes; unused amplitudes are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub alpha: Amplitude,
    pub beta: Amplitude,
    pub gamma: Amplitude,
    pub lambda: Amplitude,
}

impl FamilySpec {
    pub fn new(family: Family, alpha: Amplitude) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            family,
            alpha,
            beta: zero,
            gamma: zero,
            lambda: zero,
        }
    }

    pub fn with_beta(mut self, beta: Amplitude) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_second_branch(mut self, gamma: Amplitude, lambda: Amplitude) -> Self {
        self.gamma = gamma;
        self.lambda = lambda;
        self
    }

    pub fn build(&self) -> Result<CoherentSuperposition> {
        match self.family {
            Family::Product => CoherentSuperposition::product(self.alpha, self.beta),
            Family::Psi1 => make_psi1(self.alpha, self.beta),
            Family::Psi2 => make_psi2(self.alpha),
            Family::Psi3 => make_psi3(self.alpha),
            Family::PsiPlus => make_two_branch(self.alpha, self.beta, self.gamma, self.lambda, 1.0),
            Family::PsiMinus => {
                make_two_branch(self.alpha, self.beta, self.gamma, self.lambda, -1.0)
            }
        }
    }
}

/// Parses `"re,im"` or a bare real `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || {
        Error::InvalidParameter(format!(
            "cannot parse complex amplitude '{s}' (expected re,im)"
        ))
    };
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}
