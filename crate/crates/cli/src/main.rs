//! `mkpoly`: compute Macdonald-Koornwinder polynomials, branching and Pieri
//! coefficients, and run the identity verifiers.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or parameter error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use koornwinder::branching::{askey_wilson, branching_coeffs, MkBuilder};
use koornwinder::pieri::pieri_table;
use koornwinder::verify::{run_suite, Suite};
use koornwinder::{Error, ParameterPoint, Partition};

#[derive(Parser)]
#[command(
    name = "mkpoly",
    version,
    about = "Exact Macdonald-Koornwinder polynomials by branching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter point, e.g. q=1/3,t=1/2,t0=1/5,t1=2/7,t2=1/4,t3=3/8
    #[arg(long)]
    params: ParameterPoint,
}

#[derive(Args)]
struct OutArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// P_λ(z₁,…,z_n) as Laurent-polynomial JSON.
    Compute {
        #[arg(long)]
        n: usize,
        /// Comma-separated parts, padded with zeros to n.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
        /// Use m = max(M, λ₁) in every branching step.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Branching coefficients B⁰..B^d of P_{λ/μ}.
    Branch {
        /// λ ∈ Λ_{n+1}.
        #[arg(long)]
        lambda: Partition,
        /// μ ∈ Λ_n, padded with zeros.
        #[arg(long)]
        mu: Partition,
        /// Defaults to λ₁.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Every coefficient C^{μ,n}_{λ,r} of E_r·P_λ.
    PieriTable {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monic Askey-Wilson polynomial of degree m.
    AskeyWilson {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run an identity suite at seeded random parameter points.
    Verify {
        /// pieri, cauchy-mimachi, cauchy-okounkov, m-indep, orthogonality,
        /// branching, askey-wilson, special-values or strip-lemma.
        suite: Suite,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random parameter points.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Write the full report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit<T: Serialize>(value: &T, out: &OutArgs) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            n,
            lambda,
            m,
            params,
            out,
        } => {
            let lambda = lambda.padded(n)?;
            let mut builder = MkBuilder::new(params.params).with_min_m(m.unwrap_or(0));
            emit(builder.polynomial(&lambda)?.as_ref(), &out)
        }
        Command::Branch {
            lambda,
            mu,
            m,
            params,
            out,
        } => {
            let m = m.unwrap_or(lambda.first());
            emit(&branching_coeffs(&lambda, &mu, m, &params.params)?, &out)
        }
        Command::PieriTable {
            lambda,
            n,
            r,
            params,
            out,
        } => emit(&pieri_table(&lambda, n, r, &params.params)?, &out),
        Command::AskeyWilson { m, params, out } => emit(&askey_wilson(m, &params.params)?, &out),
        Command::Verify {
            suite,
            max_size,
            seed,
            points,
            json,
        } => {
            let report = run_suite(suite, max_size, seed, points)?;
            for p in &report.points {
                println!("point {p}");
            }
            for c in report.cases.iter().filter(|c| !c.passed) {
                println!(
                    "FAIL {} {} residual_terms={} {}",
                    c.identity,
                    c.instance,
                    c.residual_terms,
                    c.note.as_deref().unwrap_or("")
                );
                for o in &c.offending {
                    println!("    {:?} {}", o.exp, o.coef);
                }
            }
            println!(
                "{suite}: {} ({} cases, {} failed, {} coefficients checked, {} resonant points skipped, seed {seed})",
                if report.passed { "PASS" } else { "FAIL" },
                report.cases_total,
                report.cases_failed,
                report.coefficients_checked,
                report.resonant_skips
            );
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
                fs::write(&path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("MK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
