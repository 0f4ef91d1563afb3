//! Command-line front end: `exact`, `sample`, `rank` and `purity`.

pub mod commands;
pub mod envelope;
pub mod error;
pub mod state;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use purity_probe_core::discriminate::Mode;
use purity_probe_core::estimate::Policy;
use purity_probe_core::qstate::{SizeCap, DEFAULT_MAX_DIM};

use commands::PuritySource;
use envelope::ResultEnvelope;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "purity-probe", version, about = "Pure/mixed discrimination, rank tests and purity estimation from copies of a state")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; JSON is normative, CSV is flattened key,value rows.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest m^n for which explicit operators are built.
    #[arg(long, global = true, env = "PURITY_PROBE_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Unambiguous,
    Maxconf,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Unambiguous => Mode::Unambiguous,
            ModeArg::Maxconf => Mode::MaxConfidence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    EqualMeasurements,
    EqualCopies,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::EqualMeasurements => Policy::EqualMeasurements,
            PolicyArg::EqualCopies => Policy::EqualCopies,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact outcome probabilities, decay bound and rank-outcome probabilities.
    Exact(ExactArgs),
    /// Simulated outcome counts of the pure/mixed measurement.
    Sample(SampleArgs),
    /// Rank-test outcome probabilities.
    Rank(RankArgs),
    /// Purity and spectrum estimate from simulated or recorded counts.
    Purity(PurityArgs),
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Number of copies.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Do not build the projector to cross-check the spectral result.
    #[arg(long)]
    pub skip_cross_check: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Unambiguous)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct PurityArgs {
    /// State to simulate.
    #[arg(long, required_unless_present = "record", conflicts_with = "record", requires = "copies")]
    pub state: Option<PathBuf>,
    /// Measured counts (an experiment record, or an earlier `purity` result).
    #[arg(long)]
    pub record: Option<PathBuf>,
    /// Total number of copies to spend.
    #[arg(long)]
    pub copies: Option<u64>,
    #[arg(long, value_enum, default_value_t = PolicyArg::EqualMeasurements)]
    pub policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(cli: &Cli) -> Result<ResultEnvelope, CliError> {
    let start = Instant::now();
    let cap = SizeCap(cli.max_dim);
    let (name, result) = match &cli.command {
        Command::Exact(a) => ("exact", commands::exact(&a.state, a.n as usize, cap, a.skip_cross_check)?),
        Command::Sample(a) => ("sample", commands::sample(&a.state, a.n as usize, a.shots, a.seed, a.mode.into())?),
        Command::Rank(a) => ("rank", commands::rank(&a.state, a.n as usize, cap)?),
        Command::Purity(a) => {
            let source = match (&a.state, &a.record) {
                (Some(state), _) => PuritySource::Simulate {
                    state: state.clone(),
                    copies: a.copies.ok_or_else(|| CliError::Input("--copies is required with --state".into()))?,
                    seed: a.seed,
                },
                (None, Some(record)) => PuritySource::Record(record.clone()),
                (None, None) => return Err(CliError::Input("either --state or --record is required".into())),
            };
            ("purity", commands::purity(source, a.policy.into())?)
        }
    };
    Ok(ResultEnvelope {
        command: name.to_string(),
        inputs: result.inputs,
        outputs: result.outputs,
        seed: result.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn render(envelope: &ResultEnvelope, format: Format) -> String {
    match format {
        Format::Json => envelope.to_json(),
        Format::Csv => envelope.to_csv(),
    }
}
