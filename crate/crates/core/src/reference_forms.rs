//! Closed forms as they circulate in print, kept verbatim so they can be
//! checked against the operator algebra. Several of them are known to be
//! wrong; nothing on a production path uses this module.
//!
//! All two-branch forms refer to `N (|alpha, beta> + |gamma, lambda>)` and use
//! the shorthand `d = exp(alpha* gamma + beta* lambda - (|alpha|^2 + |beta|^2 + |gamma|^2 + |lambda|^2)/2)`
//! for both cross terms.

use std::f64::consts::PI;

use num_complex::Complex64;

type C = Complex64;

/// Product state `<S2>` written as `alpha* beta - alpha beta*`.
pub fn product_s2_mean_minus(alpha: C, beta: C) -> C {
    alpha.conj() * beta - alpha * beta.conj()
}

/// Product state `<S3> = i (alpha beta* - alpha* beta)`.
pub fn product_s3_mean(alpha: C, beta: C) -> C {
    C::i() * (alpha * beta.conj() - alpha.conj() * beta)
}

/// Product state `<S1^2>, <S2^2>, <S3^2>`.
pub fn product_second_moments(alpha: C, beta: C) -> [C; 3] {
    let (a2, b2) = (alpha.norm_sqr(), beta.norm_sqr());
    let x = (alpha.conj() * beta).powu(2);
    let y = (alpha * beta.conj()).powu(2);
    [
        C::from((a2 - b2).powi(2) + a2 + b2),
        x + y + a2 + b2 + 2.0 * a2 * b2,
        -x - y + a2 + b2 + 2.0 * a2 * b2,
    ]
}

/// Single-branch Q-function with a trailing constant `e^2` instead of `e^z`.
pub fn q_function_trailing_e2(alpha: C, beta: C, theta: f64, phi: f64) -> f64 {
    let z = z_kernel(alpha, beta, theta, phi);
    (-(alpha.norm_sqr() + beta.norm_sqr())).exp() / (4.0 * PI) * (1.0 + z) * 2f64.exp()
}

/// Single-branch Q-function with `e^z`.
pub fn q_function_single_branch(alpha: C, beta: C, theta: f64, phi: f64) -> f64 {
    let z = z_kernel(alpha, beta, theta, phi);
    (z - (alpha.norm_sqr() + beta.norm_sqr())).exp() / (4.0 * PI) * (1.0 + z)
}

fn z_kernel(alpha: C, beta: C, theta: f64, phi: f64) -> f64 {
    let (s, c) = (0.5 * theta).sin_cos();
    (C::from_polar(c, phi) * alpha + s * beta).norm_sqr()
}

/// Degree of polarization of `|alpha, 0>` written as `1 - 4|alpha|^2 / (1 + 2|alpha|)`.
pub fn horizontal_degree_closed(alpha_abs: f64) -> f64 {
    1.0 - 4.0 * alpha_abs * alpha_abs / (1.0 + 2.0 * alpha_abs)
}

/// Large-amplitude asymptote `1 - 2/|alpha|^2`.
pub fn horizontal_degree_asymptote(alpha_sq: f64) -> f64 {
    1.0 - 2.0 / alpha_sq
}

/// Parameters of `N (|alpha, beta> + |gamma, lambda>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBranch {
    pub alpha: C,
    pub beta: C,
    pub gamma: C,
    pub lambda: C,
}

impl TwoBranch {
    fn total(&self) -> f64 {
        self.alpha.norm_sqr()
            + self.beta.norm_sqr()
            + self.gamma.norm_sqr()
            + self.lambda.norm_sqr()
    }

    /// `|N|^2 = {2 + (zeta + zeta*) exp(-total/2)}^-1`, `zeta = exp(alpha* gamma + beta* lambda)`.
    pub fn norm_factor(&self) -> f64 {
        let zeta = (self.alpha.conj() * self.gamma + self.beta.conj() * self.lambda).exp();
        1.0 / (2.0 + (zeta + zeta.conj()).re * (-0.5 * self.total()).exp())
    }

    fn d(&self) -> C {
        (self.alpha.conj() * self.gamma + self.beta.conj() * self.lambda - 0.5 * self.total()).exp()
    }

    pub fn s1_mean(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        self.norm_factor()
            * ((a.norm_sqr() - b.norm_sqr())
                + (g.norm_sqr() - l.norm_sqr())
                + ((a.conj() * g - b.conj() * l) + (a * g.conj() - b * l.conj())) * self.d())
    }

    pub fn s2_mean(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        self.norm_factor()
            * ((a.conj() * b + a * b.conj())
                + (g.conj() * l + g * l.conj())
                + ((a.conj() * l + g * b.conj()) + (g.conj() * b + a * g.conj())) * self.d())
    }

    pub fn s3_mean(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        self.norm_factor()
            * ((a * b.conj() - a.conj() * b)
                + (g * l.conj() - g.conj() * l)
                + ((g * b.conj() - a.conj() * l) + (a * l.conj() - b * g.conj())) * self.d())
    }

    fn cross_common(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        a.conj() * g + b.conj() * l + a * g.conj() + b * l.conj()
    }

    pub fn s1_second_moment(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        let diag = self.total()
            + (a.norm_sqr() - b.norm_sqr()).powi(2)
            + (g.norm_sqr() - l.norm_sqr()).powi(2);
        let cross = self.cross_common()
            + (a.conj() * g - b.conj() * l).powu(2)
            + (a * g.conj() - b * l.conj()).powu(2);
        self.norm_factor() * (diag + cross * self.d())
    }

    pub fn s2_second_moment(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        let diag = self.total()
            + 2.0 * (a.norm_sqr() * b.norm_sqr() + g.norm_sqr() * l.norm_sqr())
            + (a.conj() * b).powu(2)
            + (a * b.conj()).powu(2) * (g.conj() * l).powu(2)
            + (g * l.conj()).powu(2);
        let cross = self.cross_common()
            + (a.conj() * l + b.conj() * g).powu(2)
            + (g.conj() * b + a * l.conj()).powu(2);
        self.norm_factor() * (diag + cross * self.d())
    }

    pub fn s3_second_moment(&self) -> C {
        let (a, b, g, l) = (self.alpha, self.beta, self.gamma, self.lambda);
        let diag = self.total() + 2.0 * (a.norm_sqr() * b.norm_sqr() - g.norm_sqr() * l.norm_sqr())
            - (a.conj() * b).powu(2)
            - (a * b.conj()).powu(2) * (g.conj() * l).powu(2)
            - (g * l.conj()).powu(2);
        let cross = self.cross_common()
            - (a.conj() * l - b.conj() * g).powu(2)
            - (g.conj() * b - a * l.conj()).powu(2);
        self.norm_factor() * (diag + cross * self.d())
    }
}
