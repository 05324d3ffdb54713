use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use blowup_cli::corpus::{generate, CorpusParams};
use blowup_cli::reports::{analyze, run_suite};
use blowup_cli::{error_json, error_kind};
use blowup_core::{bs, MonomialIdeal};
use clap::{Parser, Subcommand};
use num::rational::BigRational;
use serde_json::Value;

/// Verification workbench for m-primary monomial ideals: normal Hilbert
/// coefficients, integral-closure and adjoint chains, and cohomology-table
/// scans, all in exact arithmetic.
#[derive(Parser)]
#[command(name = "blowup-verifier", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one ideal and emit a JSON report
    Analyze {
        /// Ideal file: {"dim": 3, "generators": [[2,0,0], ...]}
        ideal: PathBuf,
        /// Reduction ideal file; defaults to the ideal itself when it has
        /// exactly three generators
        #[arg(long)]
        reduction: Option<PathBuf>,
        /// Chain range for the verifiers
        #[arg(long, default_value_t = 6)]
        nmax: u64,
        /// Write the report to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a deterministic (ideal, reduction) instance corpus
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest pure-power exponent (at least 2)
        #[arg(long = "max-exp", default_value_t = 4)]
        max_exp: u64,
        /// Output directory for instance files
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every verifier over a corpus directory and summarize
    Verify {
        corpus: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u64,
        /// Fan instances across this many workers
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write per-instance reports into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cohomology-table calculus on the projective plane
    Bs {
        #[command(subcommand)]
        command: BsCommand,
    },
}

#[derive(Subcommand)]
enum BsCommand {
    /// Print the supernatural table of a zero sequence
    Supernatural {
        /// Zero sequence, strictly decreasing, e.g. 2,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        zeros: Vec<i64>,
        /// Column window lo..hi, e.g. -3..6
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Decompose an h1 row into supernatural coefficients
    Decompose {
        /// h1 values at twists 1,2,..., rationals allowed, e.g. 1,1 or 7/6,1/3
        #[arg(long, value_delimiter = ',', required = true)]
        h1: Vec<String>,
    },
    /// Exhaustive kernel-dichotomy scan over integer h1 vectors
    Scan {
        #[arg(long, default_value_t = 10)]
        h1max: u64,
        #[arg(long, default_value_t = 5)]
        rmax: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BLOWUP_VERIFIER_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let payload = match err.downcast_ref::<blowup_core::Error>() {
                Some(core) => error_json(error_kind(core), core.to_string()),
                None => error_json("input", err.to_string()),
            };
            println!("{}", pretty(&payload));
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Analyze {
            ideal,
            reduction,
            nmax,
            out,
        } => {
            let ideal: MonomialIdeal = read_json(&ideal)?;
            let reduction: Option<MonomialIdeal> =
                reduction.map(|p| read_json(&p)).transpose()?;
            let outcome = analyze(&ideal, reduction.as_ref(), nmax)?;
            emit(&outcome.report, out.as_deref())?;
            Ok(if outcome.violations.is_empty() { 0 } else { 1 })
        }
        Command::Corpus {
            seed,
            count,
            max_exp,
            out,
        } => {
            anyhow::ensure!(max_exp >= 2, "--max-exp must be at least 2");
            fs::create_dir_all(&out)?;
            let instances = generate(CorpusParams {
                seed,
                count,
                max_exp,
            });
            for inst in &instances {
                let path = out.join(inst.file_name());
                fs::write(&path, pretty(&serde_json::to_value(inst)?))?;
            }
            log::info!("wrote {} instances to {}", instances.len(), out.display());
            println!(
                "{}",
                pretty(&serde_json::json!({
                    "count": instances.len(),
                    "dir": out.display().to_string(),
                    "max_exp": max_exp,
                    "seed": seed,
                }))
            );
            Ok(0)
        }
        Command::Verify {
            corpus,
            nmax,
            jobs,
            out,
        } => {
            let outcome = run_suite(&corpus, nmax, jobs)?;
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                for (name, report) in &outcome.reports {
                    fs::write(dir.join(format!("report_{name}")), pretty(report))?;
                }
            }
            println!("{}", pretty(&outcome.summary));
            Ok(outcome.exit.code())
        }
        Command::Bs { command } => run_bs(command),
    }
}

fn run_bs(command: BsCommand) -> anyhow::Result<u8> {
    match command {
        BsCommand::Supernatural { zeros, window } => {
            let (lo, hi) = parse_window(&window)?;
            let z = bs::ZeroSequence::new(zeros)?;
            let table = bs::supernatural_table(&z, lo, hi)?;
            println!("{}", pretty(&table.to_json()));
            Ok(0)
        }
        BsCommand::Decompose { h1 } => {
            let row = h1
                .iter()
                .map(|s| {
                    BigRational::from_str(s.trim())
                        .map_err(|e| anyhow::anyhow!("cannot parse {s:?} as a rational: {e}"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let decomposition = bs::decompose_h1(&row)?;
            let coeffs: Vec<String> =
                decomposition.coeffs.iter().map(|a| a.to_string()).collect();
            println!(
                "{}",
                pretty(&serde_json::json!({
                    "coeffs": coeffs,
                    "in_cone": decomposition.in_cone,
                    "h1_at_1": decomposition.h1_at_one().to_string(),
                    "ker_psi2": decomposition.kernel_dimension().to_string(),
                    "r": decomposition.r(),
                }))
            );
            Ok(0)
        }
        BsCommand::Scan { h1max, rmax } => {
            anyhow::ensure!(rmax >= 1, "--rmax must be at least 1");
            let report = bs::dichotomy_scan(h1max, rmax);
            println!("{}", pretty(&report.to_json()));
            Ok(if report.pass() { 0 } else { 1 })
        }
    }
}

fn parse_window(text: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("window must look like lo..hi, got {text:?}"))?;
    let lo: i64 = lo.trim().parse()?;
    let hi: i64 = hi.trim().parse()?;
    anyhow::ensure!(lo <= hi, "window must be nonempty, got {text:?}");
    Ok((lo, hi))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("cannot parse {}: {e}", path.display()))
}

fn emit(report: &Value, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, pretty(report))?,
        None => println!("{}", pretty(report)),
    }
    Ok(())
}

/// Pretty JSON with a trailing newline; map keys are sorted by construction.
fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}
