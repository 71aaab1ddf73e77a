//! One-dimensional quadrature rules and the Poincaré-sphere product rule.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::error::{Error, Result};

/// Nodes and positive weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    /// Gauss-Legendre rule on `[a, b]`, mirrored so that it is exactly
    /// symmetric about the interval midpoint.
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Self> {
        let n_nz = NonZeroUsize::new(n)
            .ok_or_else(|| Error::InvalidParameter("quadrature needs at least one node".into()))?;
        let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(n_nz).as_node_weight_pairs().to_vec();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (pairs[j].0 - pairs[i].0);
            let w = 0.5 * (pairs[j].1 + pairs[i].1);
            pairs[i] = (-x, w);
            pairs[j] = (x, w);
        }
        if n % 2 == 1 {
            pairs[n / 2].0 = 0.0;
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        Ok(Self {
            nodes: pairs.iter().map(|&(x, _)| mid + half * x).collect(),
            weights: pairs.iter().map(|&(_, w)| half * w).collect(),
        })
    }

    /// Closed composite trapezoid rule with `n >= 2` equally spaced nodes on `[a, b]`.
    pub fn trapezoid(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "trapezoid rule needs at least two nodes".into(),
            ));
        }
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        let weights = (0..n)
            .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
            .collect();
        Ok(Self { nodes, weights })
    }

    /// Trapezoid rule for a periodic integrand on `[0, period)`.
    pub fn periodic(n: usize, period: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "periodic rule needs at least one node".into(),
            ));
        }
        let h = period / n as f64;
        Ok(Self {
            nodes: (0..n).map(|i| h * i as f64).collect(),
            weights: vec![h; n],
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Direction on the Poincaré sphere, polar angle `theta` in `[0, pi]`, azimuth `phi` in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereDirection {
    pub theta: f64,
    pub phi: f64,
}

impl SphereDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "sphere direction out of range: theta = {theta}, phi = {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }
}

/// Gauss-Legendre in `cos theta` times a periodic trapezoid in `phi`.
/// Weights sum to `4 pi`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub n_theta: usize,
    pub n_phi: usize,
    pub nodes: Vec<(SphereDirection, f64)>,
}

impl SphereQuadrature {
    pub const DEFAULT_N: usize = 128;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        let cos_rule = Rule1D::gauss_legendre(n_theta, -1.0, 1.0)?;
        let phi_rule = Rule1D::periodic(n_phi, 2.0 * PI)?;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (&x, &wx) in cos_rule.nodes.iter().zip(&cos_rule.weights) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for (&phi, &wp) in phi_rule.nodes.iter().zip(&phi_rule.weights) {
                nodes.push((SphereDirection { theta, phi }, wx * wp));
            }
        }
        Ok(Self {
            n_theta,
            n_phi,
            nodes,
        })
    }

    pub fn default_rule() -> Self {
        Self::new(Self::DEFAULT_N, Self::DEFAULT_N).expect("default sphere rule")
    }

    pub fn refined_theta(&self) -> Result<Self> {
        Self::new(2 * self.n_theta, self.n_phi)
    }
}
