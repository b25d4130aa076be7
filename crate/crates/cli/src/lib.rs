//! Command-line runner: each experiment is a subcommand that turns a
//! [`RunConfig`] into a [`ReportEnvelope`].
//!
//! Reports carry their full config, so `laurent-lab replay report.json`
//! reruns one and checks the output is byte-identical apart from timing.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;

pub use config::{Command, OutputFormat, Parameters, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{ReportEnvelope, Table};

pub const TOOL_VERSION: &str = concat!("laurent-lab ", env!("CARGO_PKG_VERSION"));

/// Runs a config and returns the report with its table, if tabular.
pub fn execute(cfg: &RunConfig) -> CliResult<(ReportEnvelope, Option<Table>)> {
    cfg.validate()?;
    let start = Instant::now();
    let payload = commands::dispatch(cfg)?;
    let env = ReportEnvelope {
        version: TOOL_VERSION.to_string(),
        schema: report::SCHEMA_VERSION,
        config: cfg.clone(),
        results: payload.results,
        timing: report::Timing {
            wall_seconds: report::num(start.elapsed().as_secs_f64()),
        },
        budget_notes: payload.budget_notes,
    };
    Ok((env, payload.table))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayOutcome {
    Identical,
    Differs { expected: String, actual: String },
}

/// Reruns the config embedded in `report` and compares everything but timing.
pub fn replay(report: &ReportEnvelope) -> CliResult<ReplayOutcome> {
    let (fresh, _) = execute(&report.config)?;
    let (expected, actual) = (report.without_timing(), fresh.without_timing());
    Ok(if expected == actual {
        ReplayOutcome::Identical
    } else {
        ReplayOutcome::Differs { expected, actual }
    })
}

pub fn replay_file(path: &Path) -> CliResult<ReplayOutcome> {
    let text = std::fs::read_to_string(path)?;
    let report: ReportEnvelope = serde_json::from_str(&text)?;
    replay(&report)
}

fn run(args: Vec<OsString>) -> CliResult<i32> {
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return Ok(code);
        }
    };
    match cli.invocation()? {
        cli::Invocation::Replay(path) => match replay_file(&path)? {
            ReplayOutcome::Identical => {
                println!("replay identical");
                Ok(0)
            }
            ReplayOutcome::Differs { .. } => {
                eprintln!("replay differs from {}", path.display());
                Ok(1)
            }
        },
        cli::Invocation::Run { cfg, jobs } => {
            if let Some(j) = jobs {
                // Fails only if a pool already exists, which is harmless.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
            }
            cfg.validate()?;
            if cfg.output_format == OutputFormat::Csv && !tabular(cfg.command) {
                return error::usage(format!(
                    "`{}` is not tabular; use --format json",
                    cfg.command.name()
                ));
            }
            let (env, table) = execute(&cfg)?;
            report::emit(&cfg, &env, table.as_ref())?;
            Ok(0)
        }
    }
}

pub fn tabular(c: Command) -> bool {
    matches!(
        c,
        Command::DegreeScan
            | Command::ExplodeRun
            | Command::ExplodeGrid
            | Command::SimCurve
            | Command::TraceMink
            | Command::TraceScan
    )
}

/// Process entry point; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match run(args.into_iter().map(Into::into).collect()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("laurent-lab: {e}");
            e.exit_code()
        }
    }
}
