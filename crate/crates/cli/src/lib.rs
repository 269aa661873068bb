//! Front end for `skewq-core`: reads sign tables, runs analyses and sweeps,
//! and renders text or JSON reports.
//!
//! [`run`] does no I/O beyond reading the input file; the binary prints the
//! returned [`Outcome`] and exits with its code.

pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use skewq_core::classifier::{DEFAULT_MAX_SWEEP_N, MAX_CATALOG_N};
use skewq_core::{analyze, catalog, verify_conjecture, SweepError, SweepOptions, Verdict};

use crate::input::InputSpec;
use crate::report::{render_orbits, AnalysisReport, OrbitJson, SweepJson};

/// Environment variable that raises the sweep guard on `n`.
pub const MAX_N_ENV: &str = "SKEWQ_MAX_N";

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const INVARIANT: i32 = 3;
    pub const COUNTEREXAMPLES: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "skewq", version, about = "Quadrics in (±1)-skew projective spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse one sign table given as {"n": .., "neg_pairs": [[i, j], ..]}.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Skip the brute-force certificate of C(A).
        #[arg(long)]
        no_oracle: bool,
    },
    /// Check the conjectured ell -> N rule on every sign pattern in n variables.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        /// Percentage of patterns certified by the oracle when n >= 6.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=100))]
        sample_certify: u32,
        #[arg(long)]
        json: bool,
    },
    /// One row per permutation class of sign patterns (n <= 6).
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
/// `max_n` is the raw value of [`MAX_N_ENV`], if set.
pub fn run<I, T>(args: I, max_n: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(code, text)
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    match cli.command {
        Command::Analyze { file, json, no_oracle } => cmd_analyze(&file, json, !no_oracle),
        Command::Sweep {
            n,
            jobs,
            sample_certify,
            json,
        } => {
            let max_n = match max_n.map(str::parse::<usize>) {
                None => DEFAULT_MAX_SWEEP_N,
                Some(Ok(v)) => v,
                Some(Err(_)) => return Outcome::fail(exit::INPUT, format!("{MAX_N_ENV} must be an integer\n")),
            };
            let opts = SweepOptions {
                jobs: jobs.map(|j| j as usize),
                sample_certify_percent: sample_certify,
                max_n,
            };
            cmd_sweep(n, &opts, json)
        }
        Command::Catalog { n, json } => cmd_catalog(n, json),
    }
}

pub fn cmd_analyze(path: &std::path::Path, json: bool, oracle: bool) -> Outcome {
    let spec = match InputSpec::read(path) {
        Ok(spec) => spec,
        Err(e) => return Outcome::fail(exit::INPUT, format!("{}: {e}\n", path.display())),
    };
    let analysis = match spec.sign_matrix().and_then(|s| analyze(&s, oracle)) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(exit::INPUT, format!("{}: {e}\n", path.display())),
    };
    let report = AnalysisReport::new(&analysis);
    let stdout = if json { to_json(&report) } else { report.render_text() };
    let mut out = Outcome::ok(exit::OK, stdout);
    if let Some(failure) = &report.oracle_failure {
        out.code = exit::INVARIANT;
        out.stderr = format!("certification failed: {failure}\n");
    } else if oracle && !report.oracle_certified {
        out.stderr = format!("note: n = {} is beyond the oracle cap; not certified\n", report.n);
    }
    out
}

pub fn cmd_sweep(n: usize, opts: &SweepOptions, json: bool) -> Outcome {
    if n < 2 {
        return Outcome::fail(exit::INPUT, "sweep needs --n >= 2\n");
    }
    let report = match verify_conjecture(n, opts) {
        Ok(r) => r,
        Err(SweepError::Guard(e)) => {
            return Outcome::fail(
                exit::INPUT,
                format!("{e} (set {MAX_N_ENV} to raise the limit at your own risk)\n"),
            )
        }
        Err(e) => return Outcome::fail(exit::INVARIANT, format!("{e}\n")),
    };
    let rendered = SweepJson::new(&report);
    let stdout = if json {
        to_json(&rendered)
    } else {
        rendered.render_text()
    };
    let code = match report.verdict {
        Verdict::Holds => exit::OK,
        Verdict::Counterexamples => exit::COUNTEREXAMPLES,
    };
    Outcome::ok(code, stdout)
}

pub fn cmd_catalog(n: usize, json: bool) -> Outcome {
    if n == 0 || n > MAX_CATALOG_N {
        return Outcome::fail(exit::INPUT, format!("catalog needs 1 <= --n <= {MAX_CATALOG_N}\n"));
    }
    match catalog(n) {
        Ok(rows) => {
            let rows: Vec<OrbitJson> = rows.iter().map(OrbitJson::new).collect();
            let stdout = if json { to_json(&rows) } else { render_orbits(&rows) };
            let code = if rows.iter().all(|r| r.oracle_certified) {
                exit::OK
            } else {
                exit::INVARIANT
            };
            Outcome::ok(code, stdout)
        }
        Err(e) => Outcome::fail(exit::INPUT, format!("{e}\n")),
    }
}
