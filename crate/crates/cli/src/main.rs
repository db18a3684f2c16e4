//! `opball`: identity suites, the operator metric, symmetry checks and
//! density experiments from the command line.
//!
//! Exit codes: 0 success, 1 failed identity / verdict / invariant, 2 usage
//! or input error.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use opball::identities::{self, SuiteConfig};
use opball::{
    canonical_pair, ensemble_experiment, metric_d, symmetry_residual, ConjugationPair, OperatorHK,
};
use opball_cli::matrix_file;
use serde::Serialize;

const MAX_DIM_H: usize = 32;
const MAX_DIM_K: usize = 8;

#[derive(Parser)]
#[command(
    name = "opball",
    version,
    about = "Operator-ball geometry and complex symmetric operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded identity suites and print a JSON report.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long = "dim-h", default_value_t = 8)]
        dim_h: usize,
        #[arg(long = "dim-k", default_value_t = 3)]
        dim_k: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print the distance d(T, S) between two operators read from matrix files.
    Metric { file_t: PathBuf, file_s: PathBuf },
    /// Check whether an operator is symmetric for a conjugation pair.
    Symcheck {
        file_t: PathBuf,
        #[arg(long, value_enum, default_value_t = PairKind::Canonical)]
        pair: PairKind,
        /// Pair file, required with `--pair file`.
        #[arg(long = "pair-file")]
        pair_file: Option<PathBuf>,
        #[arg(long, default_value_t = opball::TOL.symmetric)]
        tol: f64,
    },
    /// Run the density experiment and write per-trial CSV profiles plus a JSON report.
    Approx {
        #[arg(long = "dim-h", default_value_t = 8)]
        dim_h: usize,
        #[arg(long = "dim-k", default_value_t = 2)]
        dim_k: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix: writes `<out>_trial<i>.csv` and `<out>_report.json`.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: rayon's choice). Output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PairKind {
    Canonical,
    Identity,
    File,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

/// Input that the command cannot act on; maps to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Writes `text` and a newline to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Identities {
            seed,
            trials,
            dim_h,
            dim_k,
            tol,
        } => cmd_identities(seed, trials, dim_h, dim_k, tol),
        Command::Metric { file_t, file_s } => cmd_metric(&file_t, &file_s),
        Command::Symcheck {
            file_t,
            pair,
            pair_file,
            tol,
        } => cmd_symcheck(&file_t, pair, pair_file.as_deref(), tol),
        Command::Approx {
            dim_h,
            dim_k,
            trials,
            seed,
            out,
            threads,
        } => cmd_approx(dim_h, dim_k, trials, seed, &out, threads),
    }
}

fn check_dims(dim_h: usize, dim_k: usize) -> Result<()> {
    if dim_h == 0 || dim_h > MAX_DIM_H {
        return Err(usage(format!(
            "--dim-h must be in 1..={MAX_DIM_H}, got {dim_h}"
        )));
    }
    if dim_k == 0 || dim_k > MAX_DIM_K {
        return Err(usage(format!(
            "--dim-k must be in 1..={MAX_DIM_K}, got {dim_k}"
        )));
    }
    if dim_k > dim_h {
        return Err(usage(format!(
            "--dim-k ({dim_k}) must not exceed --dim-h ({dim_h})"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct IdentityEntry {
    name: &'static str,
    max_residual: f64,
    cases: usize,
    pass: bool,
}

#[derive(Serialize)]
struct IdentityReport {
    seed: u64,
    trials: usize,
    dim_h: usize,
    dim_k: usize,
    tol: f64,
    all_pass: bool,
    identities: Vec<IdentityEntry>,
}

fn cmd_identities(
    seed: u64,
    trials: usize,
    dim_h: usize,
    dim_k: usize,
    tol: f64,
) -> Result<Outcome> {
    check_dims(dim_h, dim_k)?;
    if !(tol > 0.0) {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    let checks = identities::run(&SuiteConfig {
        seed,
        trials,
        dim_h,
        dim_k,
    })?;
    let entries: Vec<IdentityEntry> = checks
        .into_iter()
        .map(|c| IdentityEntry {
            name: c.name,
            pass: c.max_residual <= tol,
            max_residual: c.max_residual,
            cases: c.cases,
        })
        .collect();
    let all_pass = entries.iter().all(|e| e.pass);
    let report = IdentityReport {
        seed,
        trials,
        dim_h,
        dim_k,
        tol,
        all_pass,
        identities: entries,
    };
    emit(&serde_json::to_string_pretty(&report)?)?;
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

/// Twelve significant digits, positional for ordinary magnitudes.
fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

fn read_operator(path: &Path) -> Result<OperatorHK> {
    matrix_file::read_matrix(path)
        .map(OperatorHK::new)
        .map_err(|e| usage(format!("{e:#}")))
}

fn cmd_metric(file_t: &Path, file_s: &Path) -> Result<Outcome> {
    let t = read_operator(file_t)?;
    let s = read_operator(file_s)?;
    if t.mat().shape() != s.mat().shape() {
        let (a, b) = (t.mat().shape(), s.mat().shape());
        return Err(usage(format!(
            "shape mismatch: T is {}x{}, S is {}x{}",
            a.0, a.1, b.0, b.1
        )));
    }
    let d = metric_d(&t, &s)?;
    emit(&format_sig12(d))?;
    Ok(Outcome::Pass)
}

fn cmd_symcheck(
    file_t: &Path,
    kind: PairKind,
    pair_file: Option<&Path>,
    tol: f64,
) -> Result<Outcome> {
    let t = read_operator(file_t)?;
    let (rows, cols) = t.mat().shape();
    let pair = match kind {
        PairKind::Canonical => {
            if rows < cols {
                return Err(usage(format!(
                    "canonical pair needs at least as many rows as columns, T is {rows}x{cols}"
                )));
            }
            canonical_pair(cols, rows)?
        }
        PairKind::Identity => {
            if rows != cols {
                return Err(usage(format!(
                    "identity pair needs a square T, got {rows}x{cols}"
                )));
            }
            ConjugationPair::identity(rows)
        }
        PairKind::File => {
            let path = pair_file.ok_or_else(|| usage("--pair file requires --pair-file"))?;
            matrix_file::read_pair(path).map_err(|e| usage(format!("{e:#}")))?
        }
    };
    let residual = symmetry_residual(t.mat(), &pair).map_err(|e| {
        usage(format!(
            "pair {}->{} does not fit T ({rows}x{cols}): {e}",
            pair.dim_src(),
            pair.dim_dst()
        ))
    })?;
    let symmetric = residual <= tol;
    let verdict = if symmetric {
        "SYMMETRIC"
    } else {
        "NOT-SYMMETRIC"
    };
    emit(&format!("residual: {residual:e}\nverdict: {verdict}"))?;
    Ok(if symmetric {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn cmd_approx(
    dim_h: usize,
    dim_k: usize,
    trials: usize,
    seed: u64,
    out: &Path,
    threads: Option<usize>,
) -> Result<Outcome> {
    check_dims(dim_h, dim_k)?;
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let report = match threads {
        Some(0) => return Err(usage("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("building thread pool")?
            .install(|| ensemble_experiment(dim_h, dim_k, trials, seed))?,
        None => ensemble_experiment(dim_h, dim_k, trials, seed)?,
    };
    let prefix = out.to_string_lossy();
    for trial in &report.per_trial {
        let path = format!("{prefix}_trial{}.csv", trial.trial);
        fs::write(&path, trial.profile.to_csv()).with_context(|| format!("writing {path}"))?;
    }
    let path = format!("{prefix}_report.json");
    fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
        .with_context(|| format!("writing {path}"))?;
    if !report.all_invariants_hold {
        for t in report.per_trial.iter().filter(|t| !t.invariants_hold) {
            eprintln!("trial {}: {}", t.trial, t.violations.join("; "));
        }
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}
