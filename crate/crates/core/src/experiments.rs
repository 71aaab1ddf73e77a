//! Figure reproduction, validation and state-file commands.
//!
//! Everything here is deterministic: outputs depend only on the configuration,
//! never on the worker count or the clock.

mod validate;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::entanglement::{concurrence, crc_sweep};
use crate::error::{Error, Result};
use crate::family::{parse_complex, Family, FamilySpec};
use crate::phase_space::{
    nwf_sweep, wigner_slice, Coord, GridPolicy, PhasePoint4, SlicePlane, DEFAULT_NODES,
    DEFAULT_PLANE_NODES,
};
use crate::plot::{line_plot, Series};
use crate::polarization::{polarization_degree_checked, polarization_sweep};
use crate::quadrature::SphereQuadrature;
use crate::states::{make_psi1, CoherentSuperposition};
use crate::stokes::{stokes_stats, variance_sweep};
use crate::table::{format_f64, linspace, Table};
use crate::{state_file, Amplitude};

pub use validate::{cmd_validate, Check, LedgerEntry, ValidationReport, Verdict};

/// Process exit code for an error: 3 for convergence failures, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_convergence() {
        3
    } else {
        2
    }
}

/// Default output directory when `--out-dir` is absent.
pub const OUT_DIR_ENV: &str = "TWOMODE_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Stokes variances along a family.
    Var,
    /// Q-based degree of polarization of the H, V, D and A coherent states.
    Pola1,
    /// Two-dimensional Wigner slice.
    Wigner1,
    /// NWF of `psi1(alpha, beta)` versus `alpha`.
    Negplott,
    /// Concurrence of `psi1(alpha, beta)` over an `(alpha, beta)` grid.
    Concplot,
    /// Concurrence after the converter versus rotator angle.
    OutfigC,
    /// Concurrence and NWF after the converter versus rotator angle.
    OutfigNwf,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Var,
        FigureId::Pola1,
        FigureId::Wigner1,
        FigureId::Negplott,
        FigureId::Concplot,
        FigureId::OutfigC,
        FigureId::OutfigNwf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Var => "var",
            FigureId::Pola1 => "pola1",
            FigureId::Wigner1 => "wigner1",
            FigureId::Negplott => "negplott",
            FigureId::Concplot => "concplot",
            FigureId::OutfigC => "outfig_c",
            FigureId::OutfigNwf => "outfig_nwf",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure '{s}'")))
    }
}

/// Parses an angle in radians: `"0.3"`, `"pi"`, `"pi/8"`, `"3pi/4"`, `"-pi/2"`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let bad = || Error::InvalidParameter(format!("cannot parse angle '{s}'"));
    let t = s.trim();
    if let Ok(x) = t.parse::<f64>() {
        return if x.is_finite() { Ok(x) } else { Err(bad()) };
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let k = match num.strip_suffix("pi").ok_or_else(bad)?.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(k * PI / den)
}

/// Comma-separated list of angles.
pub fn parse_angle_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_angle).collect()
}

/// Inclusive range `lo:hi:n` with `n` equally spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Sweep {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        Self { lo, hi, n }
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }

    fn check(&self, what: &str) -> Result<()> {
        if self.n == 0 || !(self.lo <= self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "{what} range must be non-empty and ordered, got {self}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            format_f64(self.lo),
            format_f64(self.hi),
            self.n
        )
    }
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(Error::InvalidParameter(format!(
                "expected 'lo:hi:n', got '{s}'"
            )));
        };
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad point count in '{s}'")))?;
        Ok(Sweep::new(parse_angle(lo)?, parse_angle(hi)?, n))
    }
}

/// Where a command takes its state from.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSource {
    Inline(FamilySpec),
    File(PathBuf),
}

impl StateSource {
    pub fn load(&self) -> Result<CoherentSuperposition> {
        match self {
            StateSource::Inline(spec) => spec.build(),
            StateSource::File(path) => state_file::read(path),
        }
    }

    fn describe(&self) -> String {
        match self {
            StateSource::Inline(s) => format!(
                "state = {}, alpha = {}, beta = {}",
                s.family,
                fmt_complex(s.alpha),
                fmt_complex(s.beta)
            ),
            StateSource::File(p) => format!("state file = {}", p.display()),
        }
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", format_f64(z.re), format_f64(z.im))
}

/// Phase-space slice settings for the Wigner figure.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSpec {
    pub x_axis: Coord,
    pub y_axis: Coord,
    pub fixed: PhasePoint4,
    pub extent: f64,
    pub points: usize,
}

impl Default for SliceSpec {
    fn default() -> Self {
        Self {
            x_axis: Coord::Q1,
            y_axis: Coord::P1,
            fixed: PhasePoint4::default(),
            extent: 4.0,
            points: 81,
        }
    }
}

/// Settings shared by every command. `None` fields fall back to figure defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub out_dir: PathBuf,
    pub emit_plots: bool,
    pub state: Option<StateSource>,
    pub family: Option<Family>,
    pub alpha: Option<Amplitude>,
    pub beta: Option<Amplitude>,
    /// Primary parameter range of sweep figures.
    pub sweep: Option<Sweep>,
    pub theta_range: Option<Sweep>,
    pub phi1_list: Option<Vec<f64>>,
    pub phi2: f64,
    /// Nodes per axis of the figure's quadrature (4D phase-space grid or sphere).
    pub grid_nodes: Option<usize>,
    /// Nodes per axis of the single-mode plane for reducible states.
    pub plane_nodes: Option<usize>,
    /// Allow the single-mode reduction of the NWF integral.
    pub reduce: bool,
    pub half_width: Option<f64>,
    pub tol: Option<f64>,
    pub slice: SliceSpec,
    pub n_max: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            emit_plots: false,
            state: None,
            family: None,
            alpha: None,
            beta: None,
            sweep: None,
            theta_range: None,
            phi1_list: None,
            phi2: 0.0,
            grid_nodes: None,
            plane_nodes: None,
            reduce: true,
            half_width: None,
            tol: None,
            slice: SliceSpec::default(),
            n_max: crate::fock::DEFAULT_N_MAX,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return bad(format!("tolerance must be positive, got {t}"));
            }
        }
        if let Some(h) = self.half_width {
            if !(h > 0.0) {
                return bad(format!("half-width must be positive, got {h}"));
            }
        }
        for n in [self.grid_nodes, self.plane_nodes].into_iter().flatten() {
            if n < 4 {
                return bad(format!("grid needs at least 4 nodes per axis, got {n}"));
            }
        }
        if let Some(s) = &self.sweep {
            s.check("sweep")?;
        }
        if let Some(s) = &self.theta_range {
            s.check("theta")?;
        }
        if matches!(&self.phi1_list, Some(l) if l.is_empty()) {
            return bad("phi1 list is empty".into());
        }
        if !self.phi2.is_finite() {
            return bad("phi2 must be finite".into());
        }
        if self.slice.points == 0
            || !(self.slice.extent > 0.0)
            || self.slice.x_axis == self.slice.y_axis
        {
            return bad(
                "slice needs two distinct axes, a positive extent and at least one point".into(),
            );
        }
        Ok(())
    }

    fn grid_policy(&self) -> GridPolicy {
        GridPolicy {
            nodes_per_axis: self.grid_nodes.unwrap_or(DEFAULT_NODES),
            half_width: self.half_width,
            reduce: self.reduce,
            plane_nodes: self.plane_nodes.unwrap_or(DEFAULT_PLANE_NODES),
            ..GridPolicy::default()
        }
    }

    fn sweep_or(&self, default: Sweep) -> Vec<f64> {
        self.sweep.unwrap_or(default).points()
    }

    /// Converter input: `psi1(alpha, beta)` with `|beta|^2 = 2` and `|alpha - beta|^2 = 4` by default.
    fn converter_state(&self) -> Result<(CoherentSuperposition, String)> {
        if let Some(src) = &self.state {
            return Ok((src.load()?, src.describe()));
        }
        let b = self.beta.unwrap_or(Complex64::new(2f64.sqrt(), 0.0));
        let a = self.alpha.unwrap_or(b - 2.0);
        let src = StateSource::Inline(FamilySpec::new(Family::Psi1, a).with_beta(b));
        Ok((src.load()?, src.describe()))
    }
}

fn finish(
    cfg: &RunConfig,
    id: FigureId,
    mut table: Table,
    plot: impl FnOnce(&Table, &Path) -> Result<()>,
) -> Result<Vec<PathBuf>> {
    table.comments.insert(0, format!("figure = {id}"));
    std::fs::create_dir_all(&cfg.out_dir)?;
    let csv = cfg.out_dir.join(format!("{id}.csv"));
    table.write_csv(&csv)?;
    let mut written = vec![csv];
    if cfg.emit_plots {
        let svg = cfg.out_dir.join(format!("{id}.svg"));
        plot(&table, &svg)?;
        written.push(svg);
    }
    Ok(written)
}

/// Writes `<out_dir>/<id>.csv` (and `<id>.svg` with `emit_plots`); returns the paths written.
pub fn cmd_figure(id: FigureId, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    match id {
        FigureId::Var => {
            let family = cfg.family.unwrap_or(Family::Psi1);
            if !matches!(family, Family::Psi1 | Family::Psi2 | Family::Psi3) {
                return Err(Error::InvalidParameter(format!(
                    "variance figure takes psi1, psi2 or psi3, not {family}"
                )));
            }
            let beta = cfg.beta.unwrap_or(Complex64::new(2.0, 0.0));
            let table = variance_sweep(family, beta, &cfg.sweep_or(Sweep::new(0.0, 9.0, 91)))?;
            finish(cfg, id, table, |t, p| {
                let s = ["v1", "v2", "v3"].map(Series::column);
                line_plot(
                    t,
                    "alpha_sq",
                    &s,
                    &format!("Stokes variances of {family}"),
                    p,
                )
            })
        }
        FigureId::Pola1 => {
            let n = cfg.grid_nodes.unwrap_or(SphereQuadrature::DEFAULT_N);
            let quad = SphereQuadrature::new(n, n)?;
            let alpha_sq = cfg.sweep_or(Sweep::new(0.0, 9.0, 37));
            if let (Some(tol), Some(&worst)) = (cfg.tol, alpha_sq.last()) {
                // the largest amplitude has the sharpest Q, so it bounds the quadrature error
                let a = Complex64::new(worst.sqrt(), 0.0);
                polarization_degree_checked(&CoherentSuperposition::product(a, a)?, &quad, tol)?;
            }
            let table = polarization_sweep(&alpha_sq, &quad)?;
            finish(cfg, id, table, |t, p| {
                let s = ["p_horizontal", "p_vertical", "p_diagonal", "p_antidiagonal"]
                    .map(Series::column);
                line_plot(t, "alpha_sq", &s, "Q-based degree of polarization", p)
            })
        }
        FigureId::Wigner1 => {
            let src = cfg.state.clone().unwrap_or_else(|| {
                let a = cfg.alpha.unwrap_or(Complex64::new(1.0, 0.0));
                let b = cfg.beta.unwrap_or(-a);
                StateSource::Inline(
                    FamilySpec::new(cfg.family.unwrap_or(Family::Psi1), a).with_beta(b),
                )
            });
            let psi = src.load()?;
            let s = &cfg.slice;
            let axis = linspace(-s.extent, s.extent, s.points);
            let plane = SlicePlane {
                x_axis: s.x_axis,
                y_axis: s.y_axis,
                xs: axis.iter().map(|x| x + s.fixed.get(s.x_axis)).collect(),
                ys: axis.iter().map(|y| y + s.fixed.get(s.y_axis)).collect(),
                fixed: s.fixed,
            };
            let mut table = wigner_slice(&psi, &plane)?;
            table.comment(src.describe());
            let (x, y) = (s.x_axis.name(), s.y_axis.name());
            finish(cfg, id, table, |t, p| {
                // cuts along x at a few y values stand in for the surface
                let mid = plane.ys[plane.ys.len() / 2];
                let picks = [
                    plane.ys[plane.ys.len() / 4],
                    mid,
                    plane.ys[3 * plane.ys.len() / 4],
                ];
                let series: Vec<Series> = picks
                    .iter()
                    .map(|&v| Series::filtered(format!("{y} = {}", format_f64(v)), "w", y, v))
                    .collect();
                line_plot(t, x, &series, "Wigner function cuts", p)
            })
        }
        FigureId::Negplott => {
            let beta = cfg.beta.unwrap_or(Complex64::new(2.0, 0.0));
            let alphas = cfg.sweep_or(Sweep::new(0.0, 4.0, 17));
            let policy = cfg.grid_policy();
            let mut table = nwf_sweep(
                "alpha",
                &alphas,
                |a| make_psi1(Complex64::new(a, 0.0), beta),
                &policy,
            )?;
            check_error_estimates(&table, cfg.tol.unwrap_or(crate::phase_space::GRID_NORM_TOL))?;
            table.comment(format!(
                "state = psi1(alpha, beta), alpha real, beta = {}",
                fmt_complex(beta)
            ));
            finish(cfg, id, table, |t, p| {
                line_plot(t, "alpha", &[Series::column("nwf")], "NWF of psi1", p)
            })
        }
        FigureId::Concplot => {
            let grid = cfg.sweep_or(Sweep::new(-3.0, 3.0, 61));
            let mut table = Table::new(&["alpha", "beta", "concurrence"]);
            table.comment("state = psi1(alpha, beta), alpha and beta real");
            for &a in &grid {
                for &b in &grid {
                    let psi = make_psi1(Complex64::new(a, 0.0), Complex64::new(b, 0.0))?;
                    table.push(vec![a, b, concurrence(&psi)?]);
                }
            }
            finish(cfg, id, table, |t, p| {
                let picks = [grid[0], grid[grid.len() / 4], grid[grid.len() / 2]];
                let series: Vec<Series> = picks
                    .iter()
                    .map(|&b| {
                        Series::filtered(
                            format!("beta = {}", format_f64(b)),
                            "concurrence",
                            "beta",
                            b,
                        )
                    })
                    .collect();
                line_plot(t, "alpha", &series, "Concurrence of psi1", p)
            })
        }
        FigureId::OutfigC | FigureId::OutfigNwf => {
            let (psi, desc) = cfg.converter_state()?;
            let thetas = cfg
                .theta_range
                .unwrap_or(Sweep::new(0.0, FRAC_PI_2, 25))
                .points();
            let default_phi1 = [0.0, PI / 8.0, PI / 6.0, PI / 4.0];
            let phi1 = cfg
                .phi1_list
                .clone()
                .unwrap_or_else(|| default_phi1.to_vec());
            let policy = cfg.grid_policy();
            let with_nwf = id == FigureId::OutfigNwf;
            let mut table = crc_sweep(&psi, &thetas, &phi1, cfg.phi2, with_nwf.then_some(&policy))?;
            if with_nwf {
                check_error_estimates(
                    &table,
                    cfg.tol.unwrap_or(crate::phase_space::GRID_NORM_TOL),
                )?;
            }
            table.comment(desc);
            table.comment("device = C(phi2) R(theta) C(phi1)");
            let y = if with_nwf { "nwf" } else { "concurrence" };
            finish(cfg, id, table, |t, p| {
                let series: Vec<Series> = phi1
                    .iter()
                    .map(|&f| {
                        Series::filtered(format!("phi1 = {}", format_f64(f)), y, "phi1_rad", f)
                    })
                    .collect();
                line_plot(
                    t,
                    "theta_rad",
                    &series,
                    &format!("{y} after the converter"),
                    p,
                )
            })
        }
    }
}

fn check_error_estimates(table: &Table, tol: f64) -> Result<()> {
    let errs = table.column("nwf_error_estimate").unwrap_or_default();
    let worst = errs.iter().copied().fold(0.0, f64::max);
    if worst > tol {
        let (i, _) = errs
            .iter()
            .enumerate()
            .find(|(_, &e)| e == worst)
            .unwrap_or((0, &0.0));
        let nwf = table.column("nwf").unwrap_or_default();
        return Err(Error::QuadratureTooCoarse {
            what: "NWF",
            coarse: nwf[i] - worst,
            refined: nwf[i],
            tol,
        });
    }
    Ok(())
}

/// Branch table, norm and Stokes means of a state file.
pub fn cmd_inspect(path: &Path) -> Result<String> {
    let psi = state_file::read(path)?;
    inspect_text(&psi)
}

pub fn inspect_text(psi: &CoherentSuperposition) -> Result<String> {
    let mut out = String::new();
    out.push_str("branch,coeff_re,coeff_im,ah_re,ah_im,av_re,av_im\n");
    for (i, t) in psi.terms().iter().enumerate() {
        let cells = [t.coeff.re, t.coeff.im, t.h.re, t.h.im, t.v.re, t.v.im].map(format_f64);
        out.push_str(&format!("{i},{}\n", cells.join(",")));
    }
    out.push_str(&format!("norm={}\n", format_f64(psi.norm_sqr().sqrt())));
    let normalized = if psi.is_normalized() {
        psi.clone()
    } else {
        psi.normalize()?
    };
    let s = stokes_stats(&normalized)?;
    for (k, m) in s.mean.iter().enumerate() {
        out.push_str(&format!("mean_s{k}={}\n", format_f64(*m)));
    }
    for (k, v) in s.variance.iter().enumerate() {
        out.push_str(&format!("variance_s{}={}\n", k + 1, format_f64(*v)));
    }
    Ok(out)
}

/// Writes `source` to `dest` in the interchange format.
pub fn cmd_convert(source: &StateSource, dest: &Path) -> Result<()> {
    state_file::write(dest, &source.load()?)
}

/// Reads the inline family flags of the CLI into a spec.
pub fn family_spec(family: Family, alpha: Option<&str>, beta: Option<&str>) -> Result<FamilySpec> {
    let zero = Complex64::new(0.0, 0.0);
    let a = alpha.map(parse_complex).transpose()?.unwrap_or(zero);
    let b = beta.map(parse_complex).transpose()?.unwrap_or(zero);
    Ok(FamilySpec::new(family, a).with_beta(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("3pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert_eq!(parse_angle_list("0,pi/8,pi/6,pi/4").unwrap().len(), 4);
    }

    #[test]
    fn sweeps() {
        let s: Sweep = "0:pi/2:25".parse().unwrap();
        assert_eq!(s.points()[12], PI / 4.0);
        assert!("1:2".parse::<Sweep>().is_err());
        assert!(Sweep::new(2.0, 1.0, 3).check("x").is_err());
        assert!(Sweep::new(0.0, 1.0, 0).check("x").is_err());
    }

    #[test]
    fn config_rejects_bad_tolerance() {
        let mut cfg = RunConfig::new("/nonexistent");
        cfg.tol = Some(0.0);
        let e = cmd_figure(FigureId::Var, &cfg).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn figure_names_round_trip() {
        for f in FigureId::ALL {
            assert_eq!(f.name().parse::<FigureId>().unwrap(), f);
        }
    }

    #[test]
    fn pola1_zero_amplitude_row() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::new(dir.path());
        cfg.sweep = Some(Sweep::new(0.0, 1.0, 2));
        cfg.grid_nodes = Some(32);
        let files = cmd_figure(FigureId::Pola1, &cfg).unwrap();
        let text = std::fs::read_to_string(&files[0]).unwrap();
        assert!(text.starts_with("# figure = pola1\n"));
        let first = text.lines().find(|l| l.starts_with("0,")).unwrap();
        assert_eq!(first, "0,0,0,0,0");
    }

    #[test]
    fn inspect_psi3() {
        let psi = crate::states::make_psi3(Complex64::new(2.0, 0.0)).unwrap();
        let text = inspect_text(&psi).unwrap();
        assert!(
            text.contains("norm=1\n") || text.contains("norm=0.99999999"),
            "{text}"
        );
        let s1: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("mean_s1="))
            .unwrap()
            .parse()
            .unwrap();
        assert!(s1.abs() < 1e-12);
    }
}
