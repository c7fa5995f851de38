mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbfock::adhm::{
    check_complex, fixed_point_data, frobenius, kempf_ness_flow, morse_index_numeric,
    random_stable_data, stability_check, tangent_dimension, AdhmData, AdhmError, AdhmJson, C64,
};
use hilbfock::partitions::{morse_index, Partition};
use hilbfock::series::{goettsche, BettiProfile};
use hilbfock::verify::{self, Suite, VerifyOptions};
use hilbfock::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use config::{Format, Overrides, RunConfig};
use output::{render, Output};

#[derive(Parser)]
#[command(name = "hilbfock", version, about = "Fock spaces, Göttsche's formula and ADHM data for Hilbert schemes of points")]
struct Cli {
    /// TOML file with default settings (keys as the global flags, with underscores).
    #[arg(long, global = true, env = "HILBFOCK_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Real moment-map level ζ_R (negative).
    #[arg(long, global = true, allow_hyphen_values = true)]
    zeta_r: Option<f64>,
    /// Initial flow step.
    #[arg(long, global = true)]
    step: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Flow residual target.
    #[arg(long, global = true)]
    flow_tol: Option<f64>,
    /// Relative singular-value threshold for tangent dimensions.
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    /// ε in the torus potential.
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré polynomials of Hilb^n(X) from Göttsche's product.
    Goettsche {
        /// Betti numbers b0,...,b4 of the surface.
        #[arg(long, default_value = "1,0,0,0,0")]
        betti: BettiProfile,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Runs a named check suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// ADHM data computations.
    #[command(subcommand)]
    Adhm(AdhmCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Relations,
    Characters,
    Identity,
    Appendix,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value = "1,0,0,0,0")]
    betti: BettiProfile,
    /// Truncation order (default 20 for characters, 10 otherwise).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 6)]
    nmax: u32,
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    #[arg(long, default_value_t = 6)]
    modes: u32,
    /// Random combinations added to the basis samples.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Central scalar a of the Heisenberg representation.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    central_scalar: i64,
}

#[derive(Subcommand)]
enum AdhmCommand {
    /// The torus fixed point of a partition (parts are column heights).
    Fixed {
        #[arg(long)]
        partition: Partition,
    },
    /// Flows seeded random stable data (or --input) to the level set.
    Flow {
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// ADHM datum in JSON instead of random data.
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
    },
    /// Real tangent dimension of the quotient at a flowed random datum.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Torus weights and Morse index at a fixed point.
    Morse {
        #[arg(long)]
        partition: Partition,
    },
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<AdhmError> for Failure {
    fn from(e: AdhmError) -> Self {
        match e {
            AdhmError::Unstable
            | AdhmError::IllConditionedRank { .. }
            | AdhmError::SamplingFailed(_) => {
                Failure::Numerical(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Clone, Copy)]
enum Status {
    Pass = 0,
    CheckFailed = 1,
    NonConvergence = 3,
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        config.apply(&config::load_file(path)?);
    }
    config.apply(&Overrides {
        seed: cli.seed,
        format: cli.format,
        zeta_r: cli.zeta_r,
        step: cli.step,
        max_iter: cli.max_iter,
        flow_tol: cli.flow_tol,
        rank_tol: cli.rank_tol,
        eps: cli.eps,
    });
    config.validate()?;
    Ok(config)
}

fn int_value(x: &BigInt) -> Value {
    match x.to_string().parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn matrix_value(m: &nalgebra::DMatrix<C64>) -> Value {
    m.row_iter()
        .map(|row| row.iter().map(|z| json!([z.re, z.im])).collect::<Value>())
        .collect()
}

fn key_values(command: String, result: Value, rows: Vec<(&str, String)>) -> Output {
    Output {
        command,
        result,
        columns: vec!["field", "value"],
        rows: rows.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
    }
}

fn cmd_goettsche(betti: &BettiProfile, order: usize) -> Output {
    let series = goettsche(betti, order);
    let euler = series.euler_generating();
    let rows: Vec<Value> = series
        .coeffs()
        .iter()
        .zip(&euler)
        .enumerate()
        .map(|(n, (p, e))| {
            json!({
                "n": n,
                "poincare": p.to_string(),
                "coefficients": p.coeffs().iter().map(int_value).collect::<Vec<_>>(),
                "euler": int_value(e),
            })
        })
        .collect();
    Output {
        command: "goettsche".into(),
        result: json!({ "betti": betti.to_string(), "order": order, "rows": rows }),
        columns: vec!["n", "poincare", "euler"],
        rows: series
            .coeffs()
            .iter()
            .zip(&euler)
            .enumerate()
            .map(|(n, (p, e))| vec![n.to_string(), p.to_string(), e.to_string()])
            .collect(),
    }
}

fn cmd_verify(args: &VerifyArgs, config: &RunConfig) -> (Output, Status) {
    let suite = match args.suite {
        SuiteArg::Relations => Suite::Relations,
        SuiteArg::Characters => Suite::Characters,
        SuiteArg::Identity => Suite::Identity,
        SuiteArg::Appendix => Suite::Appendix,
    };
    let default_order = if matches!(suite, Suite::Characters) { 20 } else { 10 };
    let opts = VerifyOptions {
        seed: config.seed,
        max_weight: args.max_weight,
        modes: args.modes,
        random_samples: args.samples,
        central_scalar: args.central_scalar,
        betti: args.betti,
        order: args.order.unwrap_or(default_order),
        nmax: args.nmax,
        flow: config.flow(),
        flow_seeds: 5,
        rank_tol: config.rank_tol,
        eps: config.eps,
    };
    eprintln!("verify {}: running", suite.name());
    let report = verify::run(suite, &opts);
    let passed = report.checks.iter().filter(|c| c.passed).count();
    eprintln!("verify {}: {passed}/{} checks passed", suite.name(), report.checks.len());
    let status = if report.passed() { Status::Pass } else { Status::CheckFailed };
    let out = Output {
        command: format!("verify {}", suite.name()),
        result: json!({ "suite": suite, "options": opts, "passed": report.passed(), "checks": report.checks }),
        columns: vec!["check", "status", "detail"],
        rows: report
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "pass" } else { "fail" };
                vec![c.name.clone(), status.to_string(), c.detail.clone()]
            })
            .collect(),
    };
    (out, status)
}

fn cmd_fixed(p: &Partition, config: &RunConfig) -> Output {
    let fp = fixed_point_data(p);
    let mu_c = fp.data.mu_complex();
    let mu_c_norm = if mu_c.iter().all(Zero::is_zero) {
        json!(0)
    } else {
        json!(frobenius(&fp.data.to_float().mu_complex()))
    };
    let stable = stability_check(&fp.data);
    let complex = check_complex(&fp.data);
    let float = fp.data.to_float();
    let cells: Vec<[u32; 2]> = fp.cells.iter().map(|c| [c.k, c.l]).collect();
    let result = json!({
        "partition": p.to_string(),
        "n": fp.data.n(),
        "r": fp.data.r(),
        "cells": cells,
        "mu_c_norm": mu_c_norm,
        "stable": stable,
        "monad_complex": complex,
        "torus_potential": float.torus_potential(config.eps),
        "data": AdhmJson::from(&float),
    });
    key_values(
        "adhm fixed".into(),
        result,
        vec![
            ("partition", p.to_string()),
            ("n", fp.data.n().to_string()),
            ("cells", format!("{cells:?}")),
            ("mu_c_norm", mu_c_norm.to_string()),
            ("stable", stable.to_string()),
            ("monad_complex", complex.to_string()),
        ],
    )
}

fn cmd_flow(n: Option<usize>, r: usize, input: Option<&PathBuf>, config: &RunConfig) -> Result<(Output, Status), Failure> {
    let (d, source) = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            (AdhmData::from_json_str(&text)?, json!({ "input": path.display().to_string() }))
        }
        None => {
            let n = n.expect("clap requires n without input");
            (random_stable_data(n, r, config.seed)?, json!({ "seed": config.seed }))
        }
    };
    eprintln!("adhm flow: n = {}, r = {}", d.n(), d.r());
    let res = kempf_ness_flow(&d, &config.flow())?;
    let mu_c_norm = frobenius(&res.data.mu_complex());
    let result = json!({
        "source": source,
        "n": d.n(),
        "r": d.r(),
        "converged": res.converged,
        "iterations": res.iterations,
        "residual": res.residual,
        "mu_c_norm": mu_c_norm,
        "g": matrix_value(&res.g),
        "data": AdhmJson::from(&res.data),
    });
    if !res.converged {
        eprintln!("adhm flow: no convergence after {} iterations (residual {:e})", res.iterations, res.residual);
    }
    let out = key_values(
        "adhm flow".into(),
        result,
        vec![
            ("n", d.n().to_string()),
            ("r", d.r().to_string()),
            ("converged", res.converged.to_string()),
            ("iterations", res.iterations.to_string()),
            ("residual", format!("{:e}", res.residual)),
            ("mu_c_norm", format!("{mu_c_norm:e}")),
        ],
    );
    Ok((out, if res.converged { Status::Pass } else { Status::NonConvergence }))
}

fn cmd_dim(n: usize, r: usize, config: &RunConfig) -> Result<(Output, Status), Failure> {
    let d = random_stable_data(n, r, config.seed)?;
    let flowed = kempf_ness_flow(&d, &config.flow())?;
    if !flowed.converged {
        return Err(Failure::Numerical(format!(
            "flow did not converge (residual {:e}); the tangent dimension needs a point on the level set",
            flowed.residual
        )));
    }
    let t = tangent_dimension(&flowed.data, config.zeta_r, config.rank_tol)?;
    let expected = 4 * n * r;
    let result = json!({
        "n": n,
        "r": r,
        "seed": config.seed,
        "dimension": t.dimension,
        "expected": expected,
        "kernel_dim": t.kernel_dim,
        "orbit_dim": t.orbit_dim,
        "smallest_kept": t.smallest_kept,
        "largest_dropped": t.largest_dropped,
        "flow_iterations": flowed.iterations,
        "flow_residual": flowed.residual,
    });
    let out = key_values(
        "adhm dim".into(),
        result,
        vec![
            ("n", n.to_string()),
            ("r", r.to_string()),
            ("dimension", t.dimension.to_string()),
            ("expected", expected.to_string()),
        ],
    );
    Ok((out, if t.dimension == expected { Status::Pass } else { Status::CheckFailed }))
}

fn cmd_morse(p: &Partition, config: &RunConfig) -> Result<Output, Failure> {
    let m = morse_index_numeric(p, config.eps)?;
    let weights: Vec<Value> = m
        .tangent_weights
        .iter()
        .map(|((a, b), dim)| json!({ "weight": [a, b], "dim": dim }))
        .collect();
    let result = json!({
        "partition": p.to_string(),
        "eps": config.eps,
        "index": m.index,
        "formula_index": morse_index(p),
        "tangent_weights": weights,
    });
    Ok(key_values(
        "adhm morse".into(),
        result,
        vec![
            ("partition", p.to_string()),
            ("index", m.index.to_string()),
            ("formula_index", morse_index(p).to_string()),
            (
                "tangent_weights",
                m.tangent_weights
                    .iter()
                    .map(|((a, b), dim)| format!("({a},{b})x{dim}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        ],
    ))
}

fn run(cli: &Cli, config: &RunConfig) -> Result<(Output, Status), Failure> {
    match &cli.command {
        Command::Goettsche { betti, order } => Ok((cmd_goettsche(betti, *order), Status::Pass)),
        Command::Verify(args) => Ok(cmd_verify(args, config)),
        Command::Adhm(AdhmCommand::Fixed { partition }) => Ok((cmd_fixed(partition, config), Status::Pass)),
        Command::Adhm(AdhmCommand::Flow { n, r, input }) => cmd_flow(*n, *r, input.as_ref(), config),
        Command::Adhm(AdhmCommand::Dim { n, r }) => cmd_dim(*n, *r, config),
        Command::Adhm(AdhmCommand::Morse { partition }) => Ok((cmd_morse(partition, config)?, Status::Pass)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match resolve_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &config) {
        Ok((out, status)) => {
            print!("{}", render(&out, &config));
            ExitCode::from(status as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
