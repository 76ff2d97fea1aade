//! Command-line front-end: parse polynomial/domain JSON, dispatch to the
//! library, and emit machine-readable reports.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical non-convergence (with
//! partial output). `ROOTPERTURB_MAX_ITERS` overrides the solver sweep
//! budget.

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rootperturb::bounds::{self, Regime};
use rootperturb::error::Error;
use rootperturb::grouping::{self, DeltaSearchConfig};
use rootperturb::json::{self, to_json_string};
use rootperturb::multivar;
use rootperturb::poly::Poly;
use rootperturb::rootfind::{self, SolverConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rootperturb",
    version,
    about = "Perturbation analysis of complex polynomial roots: quantitative bounds, root grouping, and boundary-zero classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all roots of a polynomial, with residuals and the clustered distinct view
    Roots {
        /// Polynomial JSON file ({"n": .., "coeffs": [[re, im], ..]})
        poly: PathBuf,
        /// Scaled-residual target for the solver
        #[arg(long, default_value_t = rootfind::DEFAULT_TOL)]
        tol: f64,
        /// Single-linkage radius for the distinct-root view
        #[arg(long, default_value_t = rootfind::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-regime bound report for a perturbed/unperturbed pair
    Bounds {
        /// Perturbed polynomial JSON file
        p: PathBuf,
        /// Unperturbed polynomial JSON file
        q: PathBuf,
        #[arg(long, default_value_t = rootfind::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Partition the roots of p into clusters around the roots of q plus an infinity group
    Group {
        /// Perturbed polynomial JSON file
        p: PathBuf,
        /// Unperturbed polynomial JSON file
        q: PathBuf,
        /// Cluster radius (the infinity cutoff is its reciprocal)
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = rootfind::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = rootfind::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate the largest perturbation size that keeps the grouping counts exact
    DeltaSearch {
        /// Unperturbed polynomial JSON file
        q: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Random perturbations tested per candidate size
        #[arg(long, default_value_t = 16)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = rootfind::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = rootfind::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a boundary zero of a polydomain-stable multivariate polynomial
    Classify {
        /// Multivariate polynomial JSON file
        f: PathBuf,
        /// Polydomain JSON file
        domain: PathBuf,
        /// Candidate zero: JSON array of [re, im] pairs
        alpha: PathBuf,
        /// Zero test and restriction-certificate tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search the open polydomain for zeros (evidence, not certification)
    Probe {
        /// Multivariate polynomial JSON file
        f: PathBuf,
        /// Polydomain JSON file
        domain: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in worked example end to end and check every value
    ReproduceExample1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoConvergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let max_sweeps = sweep_budget()?;
    match command {
        Command::Roots {
            poly,
            tol,
            cluster_tol,
            output,
        } => {
            check_positive("tol", tol)?;
            check_positive("cluster-tol", cluster_tol)?;
            let p = json::parse_poly(&read_input(&poly)?)?;
            let cfg = SolverConfig { tol, max_sweeps };
            match rootfind::roots_with(&p, &cfg) {
                Ok(rs) => {
                    let distinct = rootfind::cluster(&rs, cluster_tol);
                    emit(&json::RootsJson::converged(&rs, &distinct), output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::NoConvergence { best, residuals }) => {
                    emit(&json::RootsJson::failed(&best, &residuals), output.as_deref())?;
                    eprintln!("error: {}", Error::NoConvergence { best, residuals });
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e),
            }
        }
        Command::Bounds { p, q, tol, output } => {
            check_positive("tol", tol)?;
            let p = json::parse_poly(&read_input(&p)?)?;
            let q = json::parse_poly(&read_input(&q)?)?;
            let cfg = bounds::AnalyzeConfig {
                solver: SolverConfig { tol, max_sweeps },
                ..Default::default()
            };
            let report = bounds::two_regime_analyze_with(&p, &q, &cfg)?;
            emit(&json::BoundReportJson::from(&report), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Group {
            p,
            q,
            epsilon,
            tol,
            cluster_tol,
            output,
        } => {
            check_positive("tol", tol)?;
            check_positive("cluster-tol", cluster_tol)?;
            let p = json::parse_poly(&read_input(&p)?)?;
            let q = json::parse_poly(&read_input(&q)?)?;
            let cfg = SolverConfig { tol, max_sweeps };
            let deg_q = q.formal_degree().ok_or(Error::ZeroPolynomial)?;
            let deg_p = p.formal_degree().ok_or(Error::ZeroPolynomial)?;
            let q_distinct = if deg_q >= 1 {
                rootfind::cluster(&rootfind::roots_with(&q, &cfg)?, cluster_tol)
            } else {
                rootperturb::DistinctRoots::empty()
            };
            let p_rs = if deg_p >= 1 {
                rootfind::roots_with(&p, &cfg)?
            } else {
                rootperturb::RootSet {
                    roots: Vec::new(),
                    residuals: Vec::new(),
                    declared_tol: tol,
                    reconstruction_defect: 0.0,
                }
            };
            let g = grouping::group_roots(&q_distinct, &p_rs, epsilon, deg_p, deg_q)?;
            emit(&json::GroupingJson::from(&g), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DeltaSearch {
            q,
            epsilon,
            trials,
            seed,
            tol,
            cluster_tol,
            output,
        } => {
            check_positive("tol", tol)?;
            check_positive("cluster-tol", cluster_tol)?;
            let q = json::parse_poly(&read_input(&q)?)?;
            let cfg = DeltaSearchConfig {
                solver: SolverConfig { tol, max_sweeps },
                cluster_tol,
                ..Default::default()
            };
            let delta = grouping::find_delta_empirically_with(&q, epsilon, trials, seed, &cfg)?;
            emit(
                &json::DeltaSearchJson {
                    epsilon,
                    trials,
                    seed,
                    delta,
                },
                output.as_deref(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            f,
            domain,
            alpha,
            tol,
            output,
        } => {
            check_positive("tol", tol)?;
            let f = json::parse_multipoly(&read_input(&f)?)?;
            let dom = json::parse_polydomain(&read_input(&domain)?)?;
            let alpha = json::parse_point(&read_input(&alpha)?)?;
            let out = multivar::classify_boundary_zero(&f, &dom, &alpha, tol)?;
            emit(&json::ClassificationJson::from(&out), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Probe {
            f,
            domain,
            samples,
            seed,
            output,
        } => {
            let f = json::parse_multipoly(&read_input(&f)?)?;
            let dom = json::parse_polydomain(&read_input(&domain)?)?;
            let report = multivar::stability_probe(&f, &dom, samples, seed)?;
            emit(&json::ProbeJson::from(&report), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceExample1 => reproduce_example1(max_sweeps),
    }
}

fn sweep_budget() -> Result<u32, Error> {
    match std::env::var("ROOTPERTURB_MAX_ITERS") {
        Ok(s) => s
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("ROOTPERTURB_MAX_ITERS: not a count: {s:?}"))),
        Err(_) => Ok(rootfind::DEFAULT_MAX_SWEEPS),
    }
}

fn check_positive(name: &str, value: f64) -> Result<(), Error> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Parse(format!("--{name} must be positive, got {value}")))
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: serde::Serialize>(value: &T, output: Option<&Path>) -> Result<(), Error> {
    let mut text = to_json_string(value);
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// the built-in worked example
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    computed: String,
    expected: &'static str,
    pass: bool,
}

fn reproduce_example1(max_sweeps: u32) -> Result<ExitCode, Error> {
    let eta = 1e-8;
    let q = Poly::from_real(&[-1.0, 1.0, -1.0, 1.0, 0.0])?;
    let p = Poly::from_real(&[-1.0 + eta, 1.0 + eta, -1.0 + eta, 1.0 + eta, eta])?;

    let cfg = bounds::AnalyzeConfig {
        solver: SolverConfig {
            tol: rootfind::DEFAULT_TOL,
            max_sweeps,
        },
        ..Default::default()
    };

    let constants = bounds::cd_constants(q.coeffs(), 4)?;
    let threshold = bounds::admissibility_threshold_with(&q, &cfg)?;
    let report = bounds::two_regime_analyze_with(&p, &q, &cfg)?;
    let p_roots = rootfind::roots_with(&p, &cfg.solver)?;

    let mut checks = Vec::new();
    checks.push(Check {
        name: "sum |b_i/b_0|",
        computed: format!("{}", constants.sum_ratio),
        expected: "4 (exact)",
        pass: constants.sum_ratio == 4.0,
    });
    checks.push(Check {
        name: "D",
        computed: format!("{}", constants.d),
        expected: "76 (exact)",
        pass: constants.d == 76.0,
    });
    checks.push(Check {
        name: "C",
        computed: format!("{}", constants.c),
        expected: "1779314 (exact)",
        pass: constants.c == 1779314.0,
    });
    let expected_threshold = 1.0 / 28469024.0;
    checks.push(Check {
        name: "admissibility threshold",
        computed: format!("{threshold:.17e}"),
        expected: "1/28469024 (1e-15 rel)",
        pass: (threshold - expected_threshold).abs() <= 1e-15 * expected_threshold,
    });

    let near_one = p_roots
        .roots
        .iter()
        .map(|z| (z - Complex64::new(1.0, 0.0)).norm())
        .fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "root near 1",
        computed: format!("|l - 1| = {near_one:.3e}"),
        expected: "<= 1e-5",
        pass: near_one <= 1e-5,
    });

    for sign in [1.0, -1.0] {
        let target = Complex64::new(0.0, sign);
        let closest = p_roots
            .roots
            .iter()
            .min_by(|a, b| {
                (*a - target)
                    .norm()
                    .partial_cmp(&(*b - target).norm())
                    .expect("finite")
            })
            .copied()
            .expect("four roots");
        let dist = (closest - target).norm();
        let re = closest.re;
        checks.push(Check {
            name: if sign > 0.0 {
                "root near i (2.5e-9 + i)"
            } else {
                "root near -i (2.5e-9 - i)"
            },
            computed: format!("dist {dist:.3e}, Re = {re:.4e}"),
            expected: "dist <= 1e-6, Re in [1e-10, 1e-8]",
            pass: dist <= 1e-6 && (1e-10..=1e-8).contains(&re),
        });
    }

    let largest = p_roots
        .roots
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let inv = 1.0 / largest;
    checks.push(Check {
        name: "reciprocal of largest root",
        computed: format!("{inv:.6e}"),
        expected: "1.0e-8 (1e-3 rel)",
        pass: (inv - 1e-8).abs() <= 1e-3 * 1e-8,
    });

    checks.push(Check {
        name: "infinity bound C^(1/4) eta^(1/4)",
        computed: format!("{:.6}", report.bounds.infinity_bound),
        expected: "0.36523 (1e-4 abs)",
        pass: (report.bounds.infinity_bound - 0.36523).abs() <= 1e-4,
    });
    checks.push(Check {
        name: "near bound 2 C^(1/4) eta^(1/4)",
        computed: format!("{:.6}", report.bounds.near_bound),
        expected: "0.73045 (1e-4 abs)",
        pass: (report.bounds.near_bound - 0.73045).abs() <= 1e-4,
    });
    checks.push(Check {
        name: "hypotheses",
        computed: format!(
            "constant_term={} leading={} global={} admissible={}",
            report.hypotheses.constant_term,
            report.hypotheses.leading_at_degq,
            report.hypotheses.global_small,
            report.hypotheses.eps_admissible
        ),
        expected: "all true",
        pass: report.hypotheses.all_pass(),
    });

    let near = report
        .per_root
        .iter()
        .filter(|r| r.regime == Regime::Near)
        .count();
    let infinity = report
        .per_root
        .iter()
        .filter(|r| r.regime == Regime::Infinity)
        .count();
    checks.push(Check {
        name: "regime split",
        computed: format!("near={near} infinity={infinity}"),
        expected: "near=3 infinity=1",
        pass: near == 3 && infinity == 1,
    });

    println!(
        "{:<34} {:<44} {:<28} verdict",
        "check", "computed", "expected"
    );
    let mut all = true;
    for c in &checks {
        all &= c.pass;
        println!(
            "{:<34} {:<44} {:<28} {}",
            c.name,
            c.computed,
            c.expected,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    if all {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}
