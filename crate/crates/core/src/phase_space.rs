//! Two-mode Wigner function of coherent superpositions and its negativity volume.
//!
//! Conventions: `hbar = 1`, `alpha = (q + i p) / sqrt 2`, `integral W dq dp = 1`
//! per mode. The Weyl symbol of the rank-one operator `|a><g|` is
//!
//! `W_{a,g}(q, p) = (1/pi) <g|a> exp(-2 (xi - a)(xi* - g*))`, `xi = (q + i p)/sqrt 2`,
//!
//! so the Wigner function of `sum_k c_k |h_k, v_k>` factors into
//! `sum_ij conj(c_i) c_j W_{h_j,h_i}(q1, p1) W_{v_j,v_i}(q2, p2)`.
//! The negativity volume `delta = integral |W| d^4 - 1` is integrated on a
//! tensor-product grid by precomputing the single-mode kernels once per mode.

use std::f64::consts::{FRAC_1_PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::Rule1D;
use crate::states::{Amplitude, CoherentSuperposition};
use crate::summation::{pairwise_sum, pairwise_sum2_by};
use crate::table::Table;

/// Largest tolerated `|integral W - 1|` before a grid is rejected.
pub const GRID_NORM_TOL: f64 = 1e-4;

/// Default nodes per axis of the 4D grid.
pub const DEFAULT_NODES: usize = 96;

/// Default margin added to the branch spread when sizing the grid.
pub const DEFAULT_MARGIN: f64 = 6.0;

/// A point `(q1, p1, q2, p2)` of two-mode phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint4 {
    pub q1: f64,
    pub p1: f64,
    pub q2: f64,
    pub p2: f64,
}

impl PhasePoint4 {
    pub fn new(q1: f64, p1: f64, q2: f64, p2: f64) -> Self {
        Self { q1, p1, q2, p2 }
    }

    pub fn get(&self, c: Coord) -> f64 {
        match c {
            Coord::Q1 => self.q1,
            Coord::P1 => self.p1,
            Coord::Q2 => self.q2,
            Coord::P2 => self.p2,
        }
    }

    pub fn set(&mut self, c: Coord, x: f64) {
        match c {
            Coord::Q1 => self.q1 = x,
            Coord::P1 => self.p1 = x,
            Coord::Q2 => self.q2 = x,
            Coord::P2 => self.p2 = x,
        }
    }

    /// Phase-space point at the center of the coherent branch `|h, v>`.
    pub fn at_amplitudes(h: Amplitude, v: Amplitude) -> Self {
        Self::new(SQRT_2 * h.re, SQRT_2 * h.im, SQRT_2 * v.re, SQRT_2 * v.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    Q1,
    P1,
    Q2,
    P2,
}

impl Coord {
    pub fn name(self) -> &'static str {
        match self {
            Coord::Q1 => "q1",
            Coord::P1 => "p1",
            Coord::Q2 => "q2",
            Coord::P2 => "p2",
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Coord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Coord::Q1, Coord::P1, Coord::Q2, Coord::P2]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown phase-space coordinate '{s}'")))
    }
}

/// Weyl symbol of `|a><g|` at `(q, p)`.
pub fn cross_wigner_kernel(a: Amplitude, g: Amplitude, q: f64, p: f64) -> Complex64 {
    let xi = Complex64::new(q, p) / SQRT_2;
    let expo = g.conj() * a
        - 0.5 * (g.norm_sqr() + a.norm_sqr())
        - 2.0 * (xi - a) * (xi.conj() - g.conj());
    FRAC_1_PI * expo.exp()
}

/// `W(q1, p1, q2, p2)` of a normalized superposition.
pub fn wigner_point(psi: &CoherentSuperposition, pt: PhasePoint4) -> Result<f64> {
    psi.require_normalized()?;
    Ok(wigner_unchecked(psi, pt))
}

fn wigner_complex(psi: &CoherentSuperposition, pt: PhasePoint4) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for bra in psi.terms() {
        for ket in psi.terms() {
            acc += bra.coeff.conj()
                * ket.coeff
                * cross_wigner_kernel(ket.h, bra.h, pt.q1, pt.p1)
                * cross_wigner_kernel(ket.v, bra.v, pt.q2, pt.p2);
        }
    }
    acc
}

fn wigner_unchecked(psi: &CoherentSuperposition, pt: PhasePoint4) -> f64 {
    let w = wigner_complex(psi, pt);
    debug_assert!(w.im.abs() < 1e-12, "imaginary Wigner residue {}", w.im);
    w.re
}

/// Imaginary residue of the branch-pair sum, zero up to rounding.
pub fn wigner_imaginary_residue(psi: &CoherentSuperposition, pt: PhasePoint4) -> f64 {
    wigner_complex(psi, pt).im
}

/// Which rule is laid on each axis of a [`PhaseGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRule {
    GaussLegendre,
    Trapezoid,
}

impl FromStr for GridRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss_legendre" | "gauss-legendre" => Ok(GridRule::GaussLegendre),
            "trapezoid" => Ok(GridRule::Trapezoid),
            _ => Err(Error::InvalidParameter(format!("unknown grid rule '{s}'"))),
        }
    }
}

/// Single-mode square box `[center - half_width, center + half_width]^2` in `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBox {
    pub center_q: f64,
    pub center_p: f64,
    pub half_width: f64,
}

impl ModeBox {
    /// Centered on the branch amplitudes with `half_width = sqrt2 * spread + margin`,
    /// where `spread` is the largest distance of a branch amplitude from the center.
    pub fn covering(amps: &[Amplitude], margin: f64) -> Self {
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for a in amps {
            lo_re = lo_re.min(a.re);
            hi_re = hi_re.max(a.re);
            lo_im = lo_im.min(a.im);
            hi_im = hi_im.max(a.im);
        }
        let center = Complex64::new(0.5 * (lo_re + hi_re), 0.5 * (lo_im + hi_im));
        let spread = amps.iter().map(|a| (a - center).norm()).fold(0.0, f64::max);
        Self {
            center_q: SQRT_2 * center.re,
            center_p: SQRT_2 * center.im,
            half_width: SQRT_2 * spread + margin,
        }
    }
}

/// Tensor-product quadrature over `(q1, p1, q2, p2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub h: ModeBox,
    pub v: ModeBox,
    pub nodes_per_axis: usize,
    pub rule: GridRule,
    /// Axis rules in the order `q1, p1, q2, p2`.
    pub axes: [Rule1D; 4],
}

impl PhaseGrid {
    pub fn new(h: ModeBox, v: ModeBox, nodes_per_axis: usize, rule: GridRule) -> Result<Self> {
        for b in [&h, &v] {
            if !(b.half_width > 0.0) || !b.center_q.is_finite() || !b.center_p.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "invalid phase grid box {b:?}"
                )));
            }
        }
        let axis = |c: f64, hw: f64| match rule {
            GridRule::GaussLegendre => Rule1D::gauss_legendre(nodes_per_axis, c - hw, c + hw),
            GridRule::Trapezoid => Rule1D::trapezoid(nodes_per_axis, c - hw, c + hw),
        };
        let axes = [
            axis(h.center_q, h.half_width)?,
            axis(h.center_p, h.half_width)?,
            axis(v.center_q, v.half_width)?,
            axis(v.center_p, v.half_width)?,
        ];
        Ok(Self {
            h,
            v,
            nodes_per_axis,
            rule,
            axes,
        })
    }

    /// Grid sized from the branch amplitudes of `psi`.
    pub fn for_state(
        psi: &CoherentSuperposition,
        nodes_per_axis: usize,
        rule: GridRule,
        margin: f64,
    ) -> Result<Self> {
        let hs: Vec<Amplitude> = psi.terms().iter().map(|t| t.h).collect();
        let vs: Vec<Amplitude> = psi.terms().iter().map(|t| t.v).collect();
        Self::new(
            ModeBox::covering(&hs, margin),
            ModeBox::covering(&vs, margin),
            nodes_per_axis,
            rule,
        )
    }

    pub fn default_for(psi: &CoherentSuperposition) -> Result<Self> {
        Self::for_state(psi, DEFAULT_NODES, GridRule::GaussLegendre, DEFAULT_MARGIN)
    }

    /// Same boxes with a different node count.
    pub fn with_nodes(&self, nodes_per_axis: usize) -> Result<Self> {
        Self::new(self.h, self.v, nodes_per_axis, self.rule)
    }

    pub fn describe(&self) -> String {
        format!(
            "grid rule = {:?}, nodes/axis = {}, H box = ({}, {}) +- {}, V box = ({}, {}) +- {}",
            self.rule,
            self.nodes_per_axis,
            self.h.center_q,
            self.h.center_p,
            self.h.half_width,
            self.v.center_q,
            self.v.center_p,
            self.v.half_width
        )
    }
}

/// Single-mode cross kernels of every branch pair sampled on the 2D mode grids.
///
/// `h[i][j][a * G + b]` holds `W_{h_j, h_i}(q1_a, p1_b)`; `v` likewise for the V mode.
#[derive(Debug, Clone)]
pub struct WignerKernelTable {
    pub n_branches: usize,
    pub side: usize,
    pub h: Vec<Vec<Vec<Complex64>>>,
    pub v: Vec<Vec<Vec<Complex64>>>,
}

impl WignerKernelTable {
    pub fn build(psi: &CoherentSuperposition, grid: &PhaseGrid) -> Self {
        let terms = psi.terms();
        let sample = |bra: Amplitude, ket: Amplitude, qa: &Rule1D, pa: &Rule1D| -> Vec<Complex64> {
            qa.nodes
                .iter()
                .flat_map(|&q| {
                    pa.nodes
                        .iter()
                        .map(move |&p| cross_wigner_kernel(ket, bra, q, p))
                })
                .collect()
        };
        let table =
            |pick: fn(&crate::states::CoherentTerm) -> Amplitude, qa: &Rule1D, pa: &Rule1D| {
                terms
                    .iter()
                    .map(|bra| {
                        terms
                            .iter()
                            .map(|ket| sample(pick(bra), pick(ket), qa, pa))
                            .collect()
                    })
                    .collect()
            };
        Self {
            n_branches: terms.len(),
            side: grid.nodes_per_axis,
            h: table(|t| t.h, &grid.axes[0], &grid.axes[1]),
            v: table(|t| t.v, &grid.axes[2], &grid.axes[3]),
        }
    }
}

/// Negativity volume with convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NwfEstimate {
    /// `integral |W| - 1`.
    pub delta: f64,
    /// `integral W`, which should be 1.
    pub integral: f64,
    /// `|delta(G) - delta(G/2)|` on the same boxes.
    pub error_estimate: f64,
    pub nodes_per_axis: usize,
}

/// `(integral |W|, integral W)` on the grid through the factored kernels.
///
/// Work is split into q1 slabs; each slab is reduced in a fixed pairwise order
/// and the slabs are combined in index order, so the result does not depend on
/// the number of worker threads.
pub fn integrate_abs_and_signed(
    psi: &CoherentSuperposition,
    grid: &PhaseGrid,
) -> Result<(f64, f64)> {
    psi.require_normalized()?;
    let table = WignerKernelTable::build(psi, grid);
    let k = table.n_branches;
    let g = grid.nodes_per_axis;
    let coeffs: Vec<Complex64> = psi.terms().iter().map(|t| t.coeff).collect();

    // Hermitian pairing: diagonal pairs are real, off-diagonal pairs enter as 2 Re(.).
    let diag_v: Vec<Vec<f64>> = (0..k)
        .map(|i| table.v[i][i].iter().map(|z| z.re).collect())
        .collect();
    let mut off_pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            off_pairs.push((i, j));
        }
    }
    let off_v: Vec<(Vec<f64>, Vec<f64>)> = off_pairs
        .iter()
        .map(|&(i, j)| {
            (
                table.v[i][j].iter().map(|z| z.re).collect(),
                table.v[i][j].iter().map(|z| z.im).collect(),
            )
        })
        .collect();
    let wv: Vec<f64> = grid.axes[2]
        .weights
        .iter()
        .flat_map(|&a| grid.axes[3].weights.iter().map(move |&b| a * b))
        .collect();
    let wq1 = &grid.axes[0].weights;
    let wp1 = &grid.axes[1].weights;

    let slabs: Vec<(f64, f64)> = (0..g)
        .into_par_iter()
        .map(|a| {
            let rows: Vec<(f64, f64)> = (0..g)
                .map(|b| {
                    let u = a * g + b;
                    let dcoef: Vec<f64> = (0..k)
                        .map(|i| coeffs[i].norm_sqr() * table.h[i][i][u].re)
                        .collect();
                    let ocoef: Vec<Complex64> = off_pairs
                        .iter()
                        .map(|&(i, j)| 2.0 * coeffs[i].conj() * coeffs[j] * table.h[i][j][u])
                        .collect();
                    let (abs_sum, signed_sum) = pairwise_sum2_by(g * g, &|w| {
                        let mut val = 0.0;
                        for i in 0..k {
                            val += dcoef[i] * diag_v[i][w];
                        }
                        for (c, (re, im)) in ocoef.iter().zip(&off_v) {
                            val += c.re * re[w] - c.im * im[w];
                        }
                        (wv[w] * val.abs(), wv[w] * val)
                    });
                    (wp1[b] * abs_sum, wp1[b] * signed_sum)
                })
                .collect();
            let abs_row: Vec<f64> = rows.iter().map(|r| r.0).collect();
            let sig_row: Vec<f64> = rows.iter().map(|r| r.1).collect();
            (
                wq1[a] * pairwise_sum(&abs_row),
                wq1[a] * pairwise_sum(&sig_row),
            )
        })
        .collect();
    let abs_all: Vec<f64> = slabs.iter().map(|s| s.0).collect();
    let sig_all: Vec<f64> = slabs.iter().map(|s| s.1).collect();
    Ok((pairwise_sum(&abs_all), pairwise_sum(&sig_all)))
}

/// Reference path: `wigner_point` at every grid node, no kernel tables.
pub fn integrate_abs_and_signed_naive(
    psi: &CoherentSuperposition,
    grid: &PhaseGrid,
) -> Result<(f64, f64)> {
    psi.require_normalized()?;
    let g = grid.nodes_per_axis;
    let [a0, a1, a2, a3] = &grid.axes;
    let mut abs_vals = Vec::with_capacity(g.pow(4));
    let mut sig_vals = Vec::with_capacity(g.pow(4));
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                for l in 0..g {
                    let pt = PhasePoint4::new(a0.nodes[i], a1.nodes[j], a2.nodes[k], a3.nodes[l]);
                    let w = a0.weights[i] * a1.weights[j] * a2.weights[k] * a3.weights[l];
                    let val = wigner_unchecked(psi, pt);
                    abs_vals.push(w * val.abs());
                    sig_vals.push(w * val);
                }
            }
        }
    }
    Ok((pairwise_sum(&abs_vals), pairwise_sum(&sig_vals)))
}

/// Negativity volume `delta = integral |W| d^4 - 1` with a half-resolution error estimate.
///
/// Fails with `GridTooSmall` when `integral W` misses 1 by more than [`GRID_NORM_TOL`].
pub fn nwf(psi: &CoherentSuperposition, grid: &PhaseGrid) -> Result<NwfEstimate> {
    let (abs_int, integral) = integrate_abs_and_signed(psi, grid)?;
    if (integral - 1.0).abs() > GRID_NORM_TOL {
        return Err(Error::GridTooSmall {
            integral,
            tol: GRID_NORM_TOL,
        });
    }
    let delta = abs_int - 1.0;
    let half = (grid.nodes_per_axis / 2).max(2);
    let (abs_half, _) = integrate_abs_and_signed(psi, &grid.with_nodes(half)?)?;
    Ok(NwfEstimate {
        delta,
        integral,
        error_estimate: (delta - (abs_half - 1.0)).abs(),
        nodes_per_axis: grid.nodes_per_axis,
    })
}

/// Default nodes per axis of the single-mode plane used after reduction.
pub const DEFAULT_PLANE_NODES: usize = 2048;

/// A superposition whose branch amplitudes `x_k = (h_k, v_k)` lie on one complex
/// line `x_0 + z u` in `C^2`, rewritten by the passive mode rotation sending `u`
/// to the H mode: `U psi = (sum_k c_k |a_k>) (x) |y>`.
///
/// Passive rotations act on the Wigner function as orthogonal symplectic maps,
/// so `integral |W|` of the two-mode state equals that of the single-mode factor
/// (the coherent V factor is positive with unit integral).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeReduction {
    pub coeffs: Vec<Complex64>,
    pub amps: Vec<Amplitude>,
}

impl SingleModeReduction {
    /// `None` when the branch amplitudes span more than one complex direction.
    pub fn of(psi: &CoherentSuperposition) -> Option<Self> {
        let terms = psi.terms();
        let x0 = (terms[0].h, terms[0].v);
        let diffs: Vec<(Complex64, Complex64)> =
            terms.iter().map(|t| (t.h - x0.0, t.v - x0.1)).collect();
        let norm = |d: &(Complex64, Complex64)| (d.0.norm_sqr() + d.1.norm_sqr()).sqrt();
        let (far, scale) = diffs
            .iter()
            .map(norm)
            .enumerate()
            .fold(
                (0, 0.0),
                |best, (i, n)| if n > best.1 { (i, n) } else { best },
            );
        let u = if scale > 0.0 {
            (diffs[far].0 / scale, diffs[far].1 / scale)
        } else {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        };
        let tol = 1e-12 * (1.0 + scale);
        let mut amps = Vec::with_capacity(terms.len());
        // first row of the rotation U = [[u1*, u2*], [-u2, u1]]
        let w0 = u.0.conj() * x0.0 + u.1.conj() * x0.1;
        for d in &diffs {
            let z = u.0.conj() * d.0 + u.1.conj() * d.1;
            let residue = norm(&(d.0 - z * u.0, d.1 - z * u.1));
            if residue > tol {
                return None;
            }
            amps.push(w0 + z);
        }
        Some(Self {
            coeffs: terms.iter().map(|t| t.coeff).collect(),
            amps,
        })
    }

    /// Single-mode Wigner function at `(q, p)`.
    pub fn wigner(&self, q: f64, p: f64) -> f64 {
        let k = self.amps.len();
        let mut acc = 0.0;
        for i in 0..k {
            acc += self.coeffs[i].norm_sqr()
                * cross_wigner_kernel(self.amps[i], self.amps[i], q, p).re;
            for j in i + 1..k {
                let z = self.coeffs[i].conj()
                    * self.coeffs[j]
                    * cross_wigner_kernel(self.amps[j], self.amps[i], q, p);
                acc += 2.0 * z.re;
            }
        }
        acc
    }

    /// `(integral |W|, integral W)` over a square box on a tensor Gauss-Legendre rule,
    /// reduced row by row in a fixed pairwise order.
    pub fn integrate(&self, bx: ModeBox, nodes: usize) -> Result<(f64, f64)> {
        let qa = Rule1D::gauss_legendre(
            nodes,
            bx.center_q - bx.half_width,
            bx.center_q + bx.half_width,
        )?;
        let pa = Rule1D::gauss_legendre(
            nodes,
            bx.center_p - bx.half_width,
            bx.center_p + bx.half_width,
        )?;
        let rows: Vec<(f64, f64)> = (0..nodes)
            .into_par_iter()
            .map(|a| {
                let (abs_row, sig_row) = pairwise_sum2_by(nodes, &|b| {
                    let w = pa.weights[b] * self.wigner(qa.nodes[a], pa.nodes[b]);
                    (w.abs(), w)
                });
                (qa.weights[a] * abs_row, qa.weights[a] * sig_row)
            })
            .collect();
        let abs_all: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let sig_all: Vec<f64> = rows.iter().map(|r| r.1).collect();
        Ok((pairwise_sum(&abs_all), pairwise_sum(&sig_all)))
    }

    /// Negativity volume on the single-mode plane, error estimated from half the nodes.
    pub fn nwf(&self, bx: ModeBox, nodes: usize) -> Result<NwfEstimate> {
        let (abs_int, integral) = self.integrate(bx, nodes)?;
        if (integral - 1.0).abs() > GRID_NORM_TOL {
            return Err(Error::GridTooSmall {
                integral,
                tol: GRID_NORM_TOL,
            });
        }
        let delta = abs_int - 1.0;
        let (abs_half, _) = self.integrate(bx, (nodes / 2).max(2))?;
        Ok(NwfEstimate {
            delta,
            integral,
            error_estimate: (delta - (abs_half - 1.0)).abs(),
            nodes_per_axis: nodes,
        })
    }
}

/// How the per-point grid of a sweep is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPolicy {
    pub nodes_per_axis: usize,
    pub rule: GridRule,
    pub margin: f64,
    /// Fixed half-width for both modes instead of the automatic sizing.
    pub half_width: Option<f64>,
    /// Integrate reducible states on the rotated single-mode plane.
    pub reduce: bool,
    pub plane_nodes: usize,
}

impl Default for GridPolicy {
    fn default() -> Self {
        Self {
            nodes_per_axis: DEFAULT_NODES,
            rule: GridRule::GaussLegendre,
            margin: DEFAULT_MARGIN,
            half_width: None,
            reduce: true,
            plane_nodes: DEFAULT_PLANE_NODES,
        }
    }
}

impl GridPolicy {
    pub fn describe(&self) -> String {
        format!(
            "4D grid rule = {:?}, nodes/axis = {}, margin = {}, half_width = {}; {}",
            self.rule,
            self.nodes_per_axis,
            self.margin,
            self.half_width
                .map_or("auto".to_string(), |h| h.to_string()),
            if self.reduce {
                format!(
                    "states with collinear branch amplitudes use the rotated single-mode plane, gauss-legendre {} nodes/axis",
                    self.plane_nodes
                )
            } else {
                "no single-mode reduction".to_string()
            }
        )
    }

    /// NWF of `psi`, on the single-mode plane when the state allows it.
    pub fn estimate(&self, psi: &CoherentSuperposition) -> Result<NwfEstimate> {
        psi.require_normalized()?;
        if self.reduce {
            if let Some(r) = SingleModeReduction::of(psi) {
                let mut bx = ModeBox::covering(&r.amps, self.margin);
                if let Some(hw) = self.half_width {
                    bx.half_width = hw;
                }
                return r.nwf(bx, self.plane_nodes);
            }
        }
        nwf(psi, &self.grid_for(psi)?)
    }

    pub fn grid_for(&self, psi: &CoherentSuperposition) -> Result<PhaseGrid> {
        let mut grid = PhaseGrid::for_state(psi, self.nodes_per_axis, self.rule, self.margin)?;
        if let Some(hw) = self.half_width {
            grid.h.half_width = hw;
            grid.v.half_width = hw;
            grid = grid.with_nodes(self.nodes_per_axis)?;
        }
        Ok(grid)
    }
}

/// NWF along a one-parameter family.
///
/// Columns: `<param>, nwf, nwf_error_estimate, w_integral`.
pub fn nwf_sweep<F>(
    param_name: &str,
    params: &[f64],
    build: F,
    policy: &GridPolicy,
) -> Result<Table>
where
    F: Fn(f64) -> Result<CoherentSuperposition>,
{
    let mut table = Table::new(&[param_name, "nwf", "nwf_error_estimate", "w_integral"]);
    table.comment(policy.describe());
    for &x in params {
        let psi = build(x)?;
        let est = policy.estimate(&psi)?;
        table.push(vec![x, est.delta, est.error_estimate, est.integral]);
    }
    Ok(table)
}

/// A 2D cut through phase space: `x_axis` and `y_axis` vary, the rest is fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePlane {
    pub x_axis: Coord,
    pub y_axis: Coord,
    pub fixed: PhasePoint4,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

/// Columns: `<x_axis>, <y_axis>, w`.
pub fn wigner_slice(psi: &CoherentSuperposition, plane: &SlicePlane) -> Result<Table> {
    psi.require_normalized()?;
    if plane.x_axis == plane.y_axis {
        return Err(Error::InvalidParameter("slice axes must differ".into()));
    }
    let mut table = Table::new(&[plane.x_axis.name(), plane.y_axis.name(), "w"]);
    let f = plane.fixed;
    table.comment(format!(
        "fixed point q1 = {}, p1 = {}, q2 = {}, p2 = {}",
        f.q1, f.p1, f.q2, f.p2
    ));
    for &x in &plane.xs {
        for &y in &plane.ys {
            let mut pt = plane.fixed;
            pt.set(plane.x_axis, x);
            pt.set(plane.y_axis, y);
            table.push(vec![x, y, wigner_unchecked(psi, pt)]);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::make_psi1;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_special_values() {
        let z = c(0.0, 0.0);
        assert!((cross_wigner_kernel(z, z, 0.0, 0.0) - FRAC_1_PI).norm() < 1e-16);
        let one = c(1.0, 0.0);
        assert!((cross_wigner_kernel(one, one, SQRT_2, 0.0) - FRAC_1_PI).norm() < 1e-15);
        // Hermitian pairing
        let (a, g) = (c(0.3, -1.0), c(1.2, 0.4));
        let k1 = cross_wigner_kernel(a, g, 0.7, -0.2);
        let k2 = cross_wigner_kernel(g, a, 0.7, -0.2);
        assert!((k1 - k2.conj()).norm() < 1e-15);
    }

    #[test]
    fn vacuum_peak() {
        let w = wigner_point(&CoherentSuperposition::vacuum(), PhasePoint4::default()).unwrap();
        assert!((w - 1.0 / (PI * PI)).abs() < 1e-16);
    }

    #[test]
    fn product_state_has_no_negativity() {
        let s = CoherentSuperposition::product(c(0.5, 0.5), c(-1.0, 0.0)).unwrap();
        let est = nwf(
            &s,
            &PhaseGrid::for_state(&s, 32, GridRule::GaussLegendre, 6.0).unwrap(),
        )
        .unwrap();
        assert!(est.delta.abs() < 1e-6, "{est:?}");
        assert!((est.integral - 1.0).abs() < 1e-6);
    }

    #[test]
    fn fast_and_naive_paths_agree() {
        let psi = make_psi1(c(1.0, 0.2), c(-0.6, 0.5)).unwrap();
        let grid = PhaseGrid::for_state(&psi, 16, GridRule::GaussLegendre, 4.0).unwrap();
        let (a, b) = integrate_abs_and_signed(&psi, &grid).unwrap();
        let (an, bn) = integrate_abs_and_signed_naive(&psi, &grid).unwrap();
        assert!((a - an).abs() < 1e-12 && (b - bn).abs() < 1e-12);
    }

    #[test]
    fn tiny_grid_is_rejected() {
        let psi = make_psi1(c(2.0, 0.0), c(-2.0, 0.0)).unwrap();
        let mut grid = PhaseGrid::default_for(&psi).unwrap();
        grid.h.half_width = 1.0;
        let grid = grid.with_nodes(24).unwrap();
        assert!(matches!(nwf(&psi, &grid), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn mode_box_covers_branches() {
        let b = ModeBox::covering(&[c(2.0, 1.0), c(-1.0, 1.0)], 6.0);
        assert!((b.center_q - SQRT_2 * 0.5).abs() < 1e-15);
        assert!((b.center_p - SQRT_2).abs() < 1e-15);
        assert!((b.half_width - (SQRT_2 * 1.5 + 6.0)).abs() < 1e-14);
    }

    #[test]
    fn slice_shape_and_axes() {
        let plane = SlicePlane {
            x_axis: Coord::Q1,
            y_axis: Coord::P1,
            fixed: PhasePoint4::default(),
            xs: vec![-1.0, 0.0, 1.0],
            ys: vec![0.0, 0.5],
        };
        let t = wigner_slice(&CoherentSuperposition::vacuum(), &plane).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.columns, vec!["q1", "p1", "w"]);
        let bad = SlicePlane {
            y_axis: Coord::Q1,
            ..plane
        };
        assert!(wigner_slice(&CoherentSuperposition::vacuum(), &bad).is_err());
    }

    #[test]
    fn coord_parsing() {
        assert_eq!("p2".parse::<Coord>().unwrap(), Coord::P2);
        assert!("x".parse::<Coord>().is_err());
        assert_eq!(
            "trapezoid".parse::<GridRule>().unwrap(),
            GridRule::Trapezoid
        );
    }
}
