use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{
    AlgorithmArg, Command, MethodArg, OutputFormat, Parameters, RunConfig, SeedSide, BUDGET_ENV,
};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "laurent-lab", version, about = "Laurent-polynomial approximate-counting experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// LP-certified minimal degrees.
    Degree {
        #[command(subcommand)]
        cmd: DegreeCmd,
    },
    /// Explicit low-degree construction.
    Fedja {
        #[command(subcommand)]
        cmd: FedjaCmd,
    },
    /// u/v explosion iteration.
    Explode {
        #[command(subcommand)]
        cmd: ExplodeCmd,
    },
    /// Statevector simulation and distinguishers.
    Sim {
        #[command(subcommand)]
        cmd: SimCmd,
    },
    /// Trace distance between subset-state ensembles.
    Trace {
        #[command(subcommand)]
        cmd: TraceCmd,
    },
    /// Run a config file as-is.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rerun a saved JSON report and compare it, ignoring timing.
    Replay { report: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DegreeCmd {
    Scan(Flags),
    Certify(Flags),
}

#[derive(Debug, Subcommand)]
pub enum FedjaCmd {
    Build(Flags),
}

#[derive(Debug, Subcommand)]
pub enum ExplodeCmd {
    Run(Flags),
    Grid(Flags),
}

#[derive(Debug, Subcommand)]
pub enum SimCmd {
    Curve(Flags),
    Grover(Flags),
    Birthday(Flags),
    Project(Flags),
}

#[derive(Debug, Subcommand)]
pub enum TraceCmd {
    Compute(Flags),
    Mink(Flags),
    Scan(Flags),
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Set size(s); comma-separated where a list is accepted.
    #[arg(long, value_delimiter = ',')]
    pub w: Vec<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Universe size(s) for trace commands.
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub k_cap: Option<u32>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub deg_u: Option<usize>,
    #[arg(long)]
    pub deg_v: Option<usize>,
    #[arg(long)]
    pub du_cap: Option<usize>,
    #[arg(long)]
    pub dv_cap: Option<usize>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[arg(long, value_enum)]
    pub seed_side: Option<SeedSide>,
    /// Rational such as `1e9` or `10/3`.
    #[arg(long)]
    pub blowup_threshold: Option<String>,
    #[arg(long)]
    pub copies: Option<usize>,
    #[arg(long)]
    pub queries: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmArg>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Rational bias threshold, default `1/10`.
    #[arg(long)]
    pub threshold: Option<String>,
    #[arg(long)]
    pub no_cross_check: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    /// Cap on enumeration and eigensolver sizes.
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config with the same schema as a report's `config`; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn parameters(&self) -> Parameters {
        let nonempty = |v: &Vec<u64>| (!v.is_empty()).then(|| v.clone());
        Parameters {
            w: nonempty(&self.w),
            n: self.n,
            l: nonempty(&self.l),
            k: self.k,
            k_cap: self.k_cap,
            degree: self.degree,
            deg_u: self.deg_u,
            deg_v: self.deg_v,
            du_cap: self.du_cap,
            dv_cap: self.dv_cap,
            max_rounds: self.max_rounds,
            seed_side: self.seed_side,
            blowup_threshold: self.blowup_threshold.clone(),
            copies: self.copies,
            queries: self.queries,
            trials: self.trials,
            algorithm: self.algorithm,
            method: self.method,
            threshold: self.threshold.clone(),
            cross_check: self.no_cross_check.then_some(false),
        }
    }

    /// File values first, then every flag that was given.
    pub fn to_config(&self, command: Command) -> CliResult<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let mut c = RunConfig::from_file(path)?;
                c.command = command;
                c
            }
            None => RunConfig::new(command),
        };
        cfg.parameters.overlay(&self.parameters());
        if let Some(x) = self.seed {
            cfg.seed = x;
        }
        if let Some(x) = self.precision_bits {
            cfg.precision_bits = x;
        }
        if let Some(x) = self.budget {
            cfg.budget = x;
        }
        if let Some(x) = self.format {
            cfg.output_format = x;
        }
        if let Some(x) = &self.out {
            cfg.output_path = Some(x.display().to_string());
        }
        Ok(cfg)
    }
}

pub enum Invocation {
    Run { cfg: RunConfig, jobs: Option<usize> },
    Replay(PathBuf),
}

impl Cli {
    pub fn invocation(&self) -> CliResult<Invocation> {
        let (command, flags) = match &self.group {
            Group::Degree { cmd: DegreeCmd::Scan(f) } => (Command::DegreeScan, f),
            Group::Degree { cmd: DegreeCmd::Certify(f) } => (Command::DegreeCertify, f),
            Group::Fedja { cmd: FedjaCmd::Build(f) } => (Command::FedjaBuild, f),
            Group::Explode { cmd: ExplodeCmd::Run(f) } => (Command::ExplodeRun, f),
            Group::Explode { cmd: ExplodeCmd::Grid(f) } => (Command::ExplodeGrid, f),
            Group::Sim { cmd: SimCmd::Curve(f) } => (Command::SimCurve, f),
            Group::Sim { cmd: SimCmd::Grover(f) } => (Command::SimGrover, f),
            Group::Sim { cmd: SimCmd::Birthday(f) } => (Command::SimBirthday, f),
            Group::Sim { cmd: SimCmd::Project(f) } => (Command::SimProject, f),
            Group::Trace { cmd: TraceCmd::Compute(f) } => (Command::TraceCompute, f),
            Group::Trace { cmd: TraceCmd::Mink(f) } => (Command::TraceMink, f),
            Group::Trace { cmd: TraceCmd::Scan(f) } => (Command::TraceScan, f),
            Group::Run { config } => {
                return Ok(Invocation::Run {
                    cfg: RunConfig::from_file(config)?,
                    jobs: None,
                })
            }
            Group::Replay { report } => return Ok(Invocation::Replay(report.clone())),
        };
        Ok(Invocation::Run {
            cfg: flags.to_config(command)?,
            jobs: flags.jobs,
        })
    }
}
