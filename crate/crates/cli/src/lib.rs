//! The `lambert` command-line tool: reproduces the inverse-matrix tables,
//! evaluates arithmetic functions through partition formulas, and runs the
//! identity verification suites.
//!
//! Exit codes: 0 when everything checked passes, 1 when a check finds a
//! counterexample, 2 on usage errors.

pub mod commands;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use lambert_core::Execution;

use crate::commands::Variant;
use crate::report::{render_report, render_table, Format};
use crate::suites::{run_suite, Bounds, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lambert",
    version,
    about = "Exact Lambert series factorization tables and identity checks"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bottom rows s⁻¹(n,1..n-1) of the inverse matrices.
    Table1 {
        #[arg(long, default_value_t = 18)]
        max_n: u64,
    },
    /// The divisor-sum grids a'(n,k) and a''(n,k).
    Figure2 {
        #[arg(long, default_value_t = 18)]
        max_n: usize,
        #[arg(long, default_value_t = 12)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Variant::Aprime)]
        variant: Variant,
    },
    /// Evaluate phi, mu, lambda, Lambda, abs_mu or jordan at n.
    Eval {
        function: String,
        n: u64,
        /// Order of the Jordan totient.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Run an identity verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Smaller default bounds.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// The factorization matrix A_n or its inverse.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inverse: bool,
    },
    /// p(0), ..., p(max).
    Partition {
        #[arg(long)]
        max: usize,
    },
}

/// What a command produced: the payload, an optional note for stderr and
/// the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub payload: String,
    pub note: Option<String>,
    pub exit_code: i32,
}

/// Runs a parsed command. Errors are usage errors (exit code 2).
pub fn run(cli: &Cli) -> Result<Outcome, String> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let table = |t: lambert_core::Result<report::Table>| -> Result<Outcome, String> {
        let t = t.map_err(|e| e.to_string())?;
        Ok(Outcome {
            payload: render_table(&t, cli.format),
            note: None,
            exit_code: EXIT_OK,
        })
    };
    match &cli.command {
        Command::Table1 { max_n } => table(commands::table1(*max_n)),
        Command::Figure2 {
            max_n,
            max_k,
            variant,
        } => table(commands::figure2(*max_n, *max_k, *variant)),
        Command::Eval { function, n, t } => {
            let (t, matched) = commands::eval(function, *n, *t).map_err(|e| e.to_string())?;
            Ok(Outcome {
                payload: render_table(&t, cli.format),
                note: None,
                exit_code: if matched {
                    EXIT_OK
                } else {
                    EXIT_COUNTEREXAMPLE
                },
            })
        }
        Command::Verify {
            suite,
            quick,
            max_n,
            max_m,
            max_order,
        } => {
            let mut bounds = if *quick {
                Bounds::quick()
            } else {
                Bounds::full()
            };
            if let Some(v) = max_n {
                bounds.max_n = *v;
            }
            if let Some(v) = max_m {
                bounds.max_m = *v;
            }
            if let Some(v) = max_order {
                bounds.max_order = *v;
            }
            if bounds.max_n == 0 || bounds.max_m == 0 || bounds.max_order == 0 {
                return Err("verification bounds must be positive".into());
            }
            let report = run_suite(*suite, &bounds, exec);
            Ok(Outcome {
                payload: render_report(&report, cli.format),
                note: Some(format!(
                    "{} checks, {} failed, {:.2?}",
                    report.checks.len(),
                    report.failures(),
                    report.elapsed
                )),
                exit_code: if report.all_passed() {
                    EXIT_OK
                } else {
                    EXIT_COUNTEREXAMPLE
                },
            })
        }
        Command::Matrix { n, inverse } => table(commands::matrix(*n, *inverse)),
        Command::Partition { max } => table(Ok(commands::partition(*max))),
    }
}
