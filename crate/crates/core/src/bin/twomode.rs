use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twomode::experiments::{
    cmd_convert, cmd_figure, cmd_inspect, cmd_validate, exit_code, family_spec, parse_angle,
    parse_angle_list, FigureId, RunConfig, SliceSpec, StateSource, Sweep, OUT_DIR_ENV,
};
use twomode::family::parse_complex;
use twomode::phase_space::{Coord, PhasePoint4};
use twomode::{Error, Family};

#[derive(Parser)]
#[command(
    name = "twomode",
    version,
    about = "Polarization and entanglement of two-mode coherent-state superpositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Write one figure's CSV (and SVG with --emit-plots).
    Figure {
        /// var, pola1, wigner1, negplott, concplot, outfig_c, outfig_nwf, or all
        id: String,
    },
    /// Run the oracle checks and the printed-formula ledger.
    Validate,
    /// Print branches, norm and Stokes statistics of a state file.
    Inspect { path: PathBuf },
    /// Write the selected state (--state or --family) as a state file.
    Convert { dest: PathBuf },
}

#[derive(Args)]
struct Opts {
    /// State file in the interchange format.
    #[arg(long, global = true)]
    state: Option<PathBuf>,
    /// State family: product, psi1, psi2, psi3, psi-plus, psi-minus.
    #[arg(long, global = true)]
    family: Option<String>,
    /// Complex amplitude as "re,im".
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Second branch of psi-plus/psi-minus, "re,im".
    #[arg(long, global = true, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Primary sweep range "lo:hi:n" (|alpha|^2, alpha, or the concurrence grid).
    #[arg(long, global = true, allow_hyphen_values = true)]
    range: Option<String>,
    /// Rotator angles "lo:hi:n"; accepts pi fractions.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta_range: Option<String>,
    /// Comma-separated first-compensator phases, e.g. "0,pi/8,pi/6,pi/4".
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi1_list: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "0")]
    phi2: String,
    /// Nodes per axis of the phase-space grid or of the sphere rule.
    #[arg(long, global = true)]
    grid_nodes: Option<usize>,
    /// Nodes per axis of the single-mode plane used for collinear-branch states.
    #[arg(long, global = true)]
    plane_nodes: Option<usize>,
    /// Always integrate the NWF on the full 4D grid.
    #[arg(long, global = true)]
    no_reduce: bool,
    /// Fixed phase-space half-width per mode instead of automatic sizing.
    #[arg(long, global = true)]
    half_width: Option<f64>,
    /// Convergence tolerance; exit 3 when exceeded.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Wigner slice axes, e.g. "q1,p1".
    #[arg(long, global = true)]
    plane: Option<String>,
    /// Wigner slice center "q1,p1,q2,p2".
    #[arg(long, global = true, allow_hyphen_values = true)]
    fixed: Option<String>,
    #[arg(long, global = true, default_value_t = twomode::fock::DEFAULT_N_MAX)]
    n_max: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    emit_plots: bool,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

impl Opts {
    fn state_source(&self) -> Result<Option<StateSource>, Error> {
        if let Some(p) = &self.state {
            return Ok(Some(StateSource::File(p.clone())));
        }
        let Some(name) = &self.family else {
            return Ok(None);
        };
        let family: Family = name.parse()?;
        let mut spec = family_spec(family, self.alpha.as_deref(), self.beta.as_deref())?;
        if self.gamma.is_some() || self.lambda.is_some() {
            let parse = |s: &Option<String>| s.as_deref().map(parse_complex).transpose();
            let zero = num_complex::Complex64::new(0.0, 0.0);
            spec = spec.with_second_branch(
                parse(&self.gamma)?.unwrap_or(zero),
                parse(&self.lambda)?.unwrap_or(zero),
            );
        }
        Ok(Some(StateSource::Inline(spec)))
    }

    fn run_config(&self) -> Result<RunConfig, Error> {
        let out_dir = self
            .out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        let mut cfg = RunConfig::new(out_dir);
        cfg.emit_plots = self.emit_plots;
        // a bare --family only picks the family of sweep figures; amplitudes make it a fixed state
        if self.state.is_some() || (self.family.is_some() && self.alpha.is_some()) {
            cfg.state = self.state_source()?;
        }
        cfg.family = self.family.as_deref().map(str::parse).transpose()?;
        cfg.alpha = self.alpha.as_deref().map(parse_complex).transpose()?;
        cfg.beta = self.beta.as_deref().map(parse_complex).transpose()?;
        cfg.sweep = self.range.as_deref().map(str::parse::<Sweep>).transpose()?;
        cfg.theta_range = self
            .theta_range
            .as_deref()
            .map(str::parse::<Sweep>)
            .transpose()?;
        cfg.phi1_list = self
            .phi1_list
            .as_deref()
            .map(parse_angle_list)
            .transpose()?;
        cfg.phi2 = parse_angle(&self.phi2)?;
        cfg.grid_nodes = self.grid_nodes;
        cfg.plane_nodes = self.plane_nodes;
        cfg.reduce = !self.no_reduce;
        cfg.half_width = self.half_width;
        cfg.tol = self.tol;
        cfg.n_max = self.n_max;
        cfg.seed = self.seed;
        let mut slice = SliceSpec::default();
        if let Some(p) = &self.plane {
            let (x, y) = p.split_once(',').ok_or_else(|| {
                Error::InvalidParameter(format!("plane must be 'x,y', got '{p}'"))
            })?;
            slice.x_axis = x.trim().parse::<Coord>()?;
            slice.y_axis = y.trim().parse::<Coord>()?;
        }
        if let Some(f) = &self.fixed {
            let v: Vec<f64> = f
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse fixed point '{f}'")))?;
            let [q1, p1, q2, p2] = v[..] else {
                return Err(Error::InvalidParameter(
                    "fixed point needs q1,p1,q2,p2".into(),
                ));
            };
            slice.fixed = PhasePoint4::new(q1, p1, q2, p2);
        }
        cfg.slice = slice;
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let cfg = cli.opts.run_config()?;
    match &cli.command {
        Command::Figure { id } => {
            let ids = if id == "all" {
                FigureId::ALL.to_vec()
            } else {
                vec![id.parse()?]
            };
            for id in ids {
                for path in cmd_figure(id, &cfg)? {
                    println!("{}", path.display());
                }
            }
            Ok(0)
        }
        Command::Validate => {
            let report = cmd_validate(cfg.n_max, cfg.seed)?;
            print!("{}", report.to_text());
            Ok(report.exit_code())
        }
        Command::Inspect { path } => {
            print!("{}", cmd_inspect(path)?);
            Ok(0)
        }
        Command::Convert { dest } => {
            let src = cli.opts.state_source()?.ok_or_else(|| {
                Error::InvalidParameter("convert needs --state or --family".into())
            })?;
            cmd_convert(&src, dest)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
