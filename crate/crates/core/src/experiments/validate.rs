//! Oracle self-consistency and equivalence checks, plus a ledger of printed
//! closed forms confirmed or contradicted by the oracle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::devices::{apply_device, crc};
use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::fock::{
    fock_from_superposition, oracle_apply_device, oracle_expectation, oracle_expectation_product,
    oracle_q_function, oracle_reduced_purity, oracle_unpolarized_check, oracle_wigner_point,
    stokes_matrices, OperatorMatrix,
};
use crate::phase_space::{wigner_point, PhasePoint4};
use crate::polarization::{polarization_degree, q_function};
use crate::quadrature::{SphereDirection, SphereQuadrature};
use crate::reference_forms as printed;
use crate::states::{make_two_branch, CoherentSuperposition, CoherentTerm};
use crate::stokes::stokes_stats;

type C = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    ConfirmedRealOnly,
    Contradicted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::ConfirmedRealOnly => "confirmed-real-only",
            Verdict::Contradicted => "contradicted",
        })
    }
}

/// A printed formula compared against the oracle on real and on complex parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub real_discrepancy: f64,
    pub complex_discrepancy: f64,
    pub tolerance: f64,
}

impl LedgerEntry {
    pub fn verdict(&self) -> Verdict {
        match (
            self.real_discrepancy <= self.tolerance,
            self.complex_discrepancy <= self.tolerance,
        ) {
            (true, true) => Verdict::Confirmed,
            (true, false) => Verdict::ConfirmedRealOnly,
            _ => Verdict::Contradicted,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub n_max: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub ledger: Vec<LedgerEntry>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// The oracle's own algebra; when this fails nothing else can be trusted.
    pub fn oracle_consistent(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("oracle-"))
            .all(Check::passed)
    }

    /// Process exit code: 0 all passed, 1 a check failed, 3 the oracle itself is inconsistent.
    pub fn exit_code(&self) -> i32 {
        match (self.oracle_consistent(), self.all_passed()) {
            (false, _) => 3,
            (true, false) => 1,
            (true, true) => 0,
        }
    }

    /// Line-oriented CSV: `check,<name>,<PASS|FAIL>,<max_error>,<tolerance>` then
    /// `ledger,<name>,<verdict>,<real>,<complex>` and a closing summary line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# twomode validation report\n# n_max = {}, seed = {}\n",
            self.n_max, self.seed
        );
        out.push_str("kind,name,status,value,tolerance\n");
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "check,{},{status},{:.3e},{:.1e}\n",
                c.name, c.max_error, c.tolerance
            ));
        }
        out.push_str("kind,name,verdict,real_discrepancy,complex_discrepancy\n");
        for e in &self.ledger {
            out.push_str(&format!(
                "ledger,{},{},{:.3e},{:.3e}\n",
                e.name,
                e.verdict(),
                e.real_discrepancy,
                e.complex_discrepancy
            ));
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "summary,{passed}/{} checks passed\n",
            self.checks.len()
        ));
        out
    }
}

fn rand_complex(rng: &mut ChaCha8Rng, r: f64) -> C {
    // uniform on the disc keeps the photon number bounded by r^2
    let rho = r * rng.gen::<f64>().sqrt();
    C::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

fn random_state(
    rng: &mut ChaCha8Rng,
    r: f64,
    max_branches: usize,
) -> Result<CoherentSuperposition> {
    let k = rng.gen_range(1..=max_branches);
    let terms = (0..k)
        .map(|_| {
            let c = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            CoherentTerm::new(c, rand_complex(rng, r), rand_complex(rng, r))
        })
        .collect::<Result<Vec<_>>>()?;
    CoherentSuperposition::new(terms)?.normalize()
}

fn max_err(errs: impl IntoIterator<Item = f64>) -> f64 {
    // NaN must fail a check, so it wins the fold
    errs.into_iter().fold(0.0, |m, e| {
        if e.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(e)
        }
    })
}

/// Runs every oracle check with `n_max` truncation and a seeded generator.
pub fn cmd_validate(n_max: usize, seed: u64) -> Result<ValidationReport> {
    if n_max < 32 {
        return Err(Error::InvalidParameter(format!(
            "validation needs n_max >= 32, got {n_max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // keeps the truncated tail of every draw far below the deficit limit
    let r = if n_max >= 48 { 2.5 } else { 2.0 };
    let s = stokes_matrices(n_max);
    let mut checks = Vec::new();

    let i2 = C::new(0.0, 2.0);
    let mut comm_err = 0.0f64;
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let comm = OperatorMatrix::commutator(&s[a], &s[b])?;
        let d = OperatorMatrix::linear_combination(&[(C::new(1.0, 0.0), &comm), (-i2, &s[c])])?;
        comm_err = comm_err.max(d.interior_max_abs());
    }
    checks.push(Check {
        name: "oracle-stokes-commutators",
        max_error: comm_err,
        tolerance: 1e-12,
    });
    let herm = max_err(s.iter().map(OperatorMatrix::hermiticity_defect));
    checks.push(Check {
        name: "oracle-stokes-hermitian",
        max_error: herm,
        tolerance: 1e-12,
    });

    // product states: <S1> = |a|^2 - |b|^2 and V1 = V2 = V3 = |a|^2 + |b|^2
    let mut closed = 0.0f64;
    let mut oracle = 0.0f64;
    for _ in 0..20 {
        let (a, b) = (rand_complex(&mut rng, r), rand_complex(&mut rng, r));
        let psi = CoherentSuperposition::product(a, b)?;
        let st = stokes_stats(&psi)?;
        let n = a.norm_sqr() + b.norm_sqr();
        closed = closed.max((st.mean[1] - (a.norm_sqr() - b.norm_sqr())).abs());
        for v in st.variance {
            closed = closed.max((v - n).abs());
        }
        let f = fock_from_superposition(&psi, n_max)?;
        for k in 1..4 {
            let m = oracle_expectation(&f, &s[k])?.re;
            let m2 = oracle_expectation_product(&f, &s[k], &s[k])?.re;
            oracle = oracle.max((m2 - m * m - n).abs());
        }
    }
    checks.push(Check {
        name: "product-variance-identity-closed-form",
        max_error: closed,
        tolerance: 1e-8,
    });
    checks.push(Check {
        name: "product-variance-identity-oracle",
        max_error: oracle,
        tolerance: 1e-8,
    });

    let mut stokes_err = 0.0f64;
    let mut q_err = 0.0f64;
    let mut w_err = 0.0f64;
    let mut unpol_err = 0.0f64;
    for _ in 0..6 {
        let psi = random_state(&mut rng, r, 3)?;
        let f = fock_from_superposition(&psi, n_max)?;
        let st = stokes_stats(&psi)?;
        for k in 0..4 {
            stokes_err = stokes_err.max((oracle_expectation(&f, &s[k])? - st.mean[k]).norm());
        }
        for k in 1..4 {
            stokes_err = stokes_err.max(
                (oracle_expectation_product(&f, &s[k], &s[k])? - st.second_moment[k - 1]).norm(),
            );
        }
        for _ in 0..5 {
            let dir = SphereDirection::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI))?;
            q_err = q_err.max((q_function(&psi, dir)? - oracle_q_function(&f, dir)).abs());
            let pt = PhasePoint4::new(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            );
            w_err = w_err.max((wigner_point(&psi, pt)? - oracle_wigner_point(&f, pt)?).abs());
        }
        // a pure state commutes with S only when it is an eigenstate: ||[rho, S]||^2 = 2 V
        let (c1, c3) = oracle_unpolarized_check(&f, &s)?;
        unpol_err = unpol_err
            .max((c1 * c1 - 2.0 * st.variance[0]).abs())
            .max((c3 * c3 - 2.0 * st.variance[2]).abs());
    }
    checks.push(Check {
        name: "stokes-moments-vs-oracle",
        max_error: stokes_err,
        tolerance: 1e-8,
    });
    checks.push(Check {
        name: "q-function-vs-oracle",
        max_error: q_err,
        tolerance: 1e-8,
    });
    checks.push(Check {
        name: "wigner-vs-displaced-parity-oracle",
        max_error: w_err,
        tolerance: 1e-7,
    });
    checks.push(Check {
        name: "commutator-norm-equals-twice-variance",
        max_error: unpol_err,
        tolerance: 1e-8,
    });

    let mut conc_err = 0.0f64;
    let mut dev_err = 0.0f64;
    for _ in 0..10 {
        let psi = make_two_branch(
            rand_complex(&mut rng, r),
            rand_complex(&mut rng, r),
            rand_complex(&mut rng, r),
            rand_complex(&mut rng, r),
            if rng.gen::<bool>() { 1.0 } else { -1.0 },
        )?;
        let f = fock_from_superposition(&psi, n_max)?;
        let c_oracle = (2.0 * (1.0 - oracle_reduced_purity(&f))).max(0.0).sqrt();
        conc_err = conc_err.max((concurrence(&psi)? - c_oracle).abs());

        let dev = crc(
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        );
        let out = fock_from_superposition(&apply_device(&psi, &dev)?, n_max)?;
        let moved = oracle_apply_device(&f, &dev)?;
        dev_err = dev_err.max((moved.inner(&out)? - 1.0).norm());
    }
    checks.push(Check {
        name: "concurrence-vs-reduced-purity",
        max_error: conc_err,
        tolerance: 1e-7,
    });
    checks.push(Check {
        name: "device-vs-number-basis-unitary",
        max_error: dev_err,
        tolerance: 1e-8,
    });

    let ledger = printed_forms_ledger(&mut rng, &s)?;
    Ok(ValidationReport {
        n_max,
        seed,
        checks,
        ledger,
    })
}

fn printed_forms_ledger(rng: &mut ChaCha8Rng, s: &[OperatorMatrix; 4]) -> Result<Vec<LedgerEntry>> {
    const TOL: f64 = 1e-9;
    let mut ledger = Vec::new();
    let mut entry = |name, real: f64, complex: f64, tolerance| {
        ledger.push(LedgerEntry {
            name,
            real_discrepancy: real,
            complex_discrepancy: complex,
            tolerance,
        })
    };

    // S3 with a symmetric sign, i (aV^dag aH + aH^dag aV) = i S2, is anti-Hermitian
    let sym = OperatorMatrix::linear_combination(&[(C::i(), &s[2])])?;
    let d = sym.hermiticity_defect();
    entry("s3-symmetric-sign-hermitian", d, d, 1e-12);

    let draws = |rng: &mut ChaCha8Rng, real: bool| -> Vec<[C; 4]> {
        (0..10)
            .map(|_| {
                [0; 4].map(|_| {
                    if real {
                        C::new(rng.gen_range(-1.2..1.2), 0.0)
                    } else {
                        rand_complex(rng, 1.2)
                    }
                })
            })
            .collect()
    };
    let real_draws = draws(rng, true);
    let complex_draws = draws(rng, false);

    type Product = fn(C, C, &crate::stokes::StokesStats) -> f64;
    let product_forms: [(&'static str, Product); 3] = [
        ("product-s2-mean-minus-form", |a, b, st| {
            (printed::product_s2_mean_minus(a, b) - st.mean[2]).norm()
        }),
        ("product-s3-mean", |a, b, st| {
            (printed::product_s3_mean(a, b) - st.mean[3]).norm()
        }),
        ("product-second-moments", |a, b, st| {
            let p = printed::product_second_moments(a, b);
            (0..3)
                .map(|k| (p[k] - st.second_moment[k]).norm())
                .fold(0.0, f64::max)
        }),
    ];
    for (name, f) in product_forms {
        let eval = |ds: &[[C; 4]]| -> Result<f64> {
            let mut worst = 0.0f64;
            for d in ds {
                let st = stokes_stats(&CoherentSuperposition::product(d[0], d[1])?)?;
                worst = worst.max(f(d[0], d[1], &st));
            }
            Ok(worst)
        };
        entry(name, eval(&real_draws)?, eval(&complex_draws)?, TOL);
    }

    // Q-function normalization under the two readings of the trailing factor
    let quad = SphereQuadrature::new(96, 96)?;
    for (name, q) in [
        (
            "q-function-trailing-e2-normalization",
            printed::q_function_trailing_e2 as fn(C, C, f64, f64) -> f64,
        ),
        (
            "q-function-trailing-ez-normalization",
            printed::q_function_single_branch,
        ),
    ] {
        let norm_err = |ds: &[[C; 4]]| {
            max_err(ds.iter().map(|d| {
                let total: f64 = quad
                    .nodes
                    .iter()
                    .map(|(dir, w)| w * q(d[0], d[1], dir.theta, dir.phi))
                    .sum();
                (total - 1.0).abs()
            }))
        };
        entry(name, norm_err(&real_draws), norm_err(&complex_draws), 1e-8);
    }

    // degree of polarization of |a, 0>: closed form versus quadrature; real a only
    let quad = SphereQuadrature::default_rule();
    let mut closed = 0.0f64;
    for a2 in [1.0f64, 4.0, 9.0] {
        let p = polarization_degree(
            &CoherentSuperposition::product(C::new(a2.sqrt(), 0.0), C::new(0.0, 0.0))?,
            &quad,
        )?;
        closed = closed.max((printed::horizontal_degree_closed(a2.sqrt()) - p).abs());
    }
    entry("horizontal-degree-closed-form", closed, closed, 1e-2);
    let mut asym = 0.0f64;
    for a2 in [16.0f64, 25.0, 36.0] {
        let p = polarization_degree(
            &CoherentSuperposition::product(C::new(a2.sqrt(), 0.0), C::new(0.0, 0.0))?,
            &quad,
        )?;
        asym = asym.max((printed::horizontal_degree_asymptote(a2) - p).abs());
    }
    entry(
        "horizontal-degree-large-amplitude-asymptote",
        asym,
        asym,
        1e-2,
    );

    type Moment = fn(&printed::TwoBranch) -> C;
    type Computed = fn(&crate::stokes::StokesStats) -> f64;
    let superposition_forms: [(&'static str, Moment, Computed); 6] = [
        ("superposition-s1-mean", printed::TwoBranch::s1_mean, |st| {
            st.mean[1]
        }),
        ("superposition-s2-mean", printed::TwoBranch::s2_mean, |st| {
            st.mean[2]
        }),
        ("superposition-s3-mean", printed::TwoBranch::s3_mean, |st| {
            st.mean[3]
        }),
        (
            "superposition-s1-second-moment",
            printed::TwoBranch::s1_second_moment,
            |st| st.second_moment[0],
        ),
        (
            "superposition-s2-second-moment",
            printed::TwoBranch::s2_second_moment,
            |st| st.second_moment[1],
        ),
        (
            "superposition-s3-second-moment",
            printed::TwoBranch::s3_second_moment,
            |st| st.second_moment[2],
        ),
    ];
    for (name, form, engine) in superposition_forms {
        let eval = |ds: &[[C; 4]]| -> Result<f64> {
            let mut worst = 0.0f64;
            for d in ds {
                let p = printed::TwoBranch {
                    alpha: d[0],
                    beta: d[1],
                    gamma: d[2],
                    lambda: d[3],
                };
                let st = stokes_stats(&make_two_branch(d[0], d[1], d[2], d[3], 1.0)?)?;
                worst = worst.max((form(&p) - engine(&st)).norm());
            }
            Ok(worst)
        };
        entry(name, eval(&real_draws)?, eval(&complex_draws)?, TOL);
    }
    Ok(ledger)
}
