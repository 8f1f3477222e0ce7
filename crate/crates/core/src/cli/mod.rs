//! Command-line front end. Every subcommand returns a [`Report`] whose outcome picks the exit code.

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

use crate::abelian::GroupError;
use crate::constructions::ConstructionError;
use crate::graph::GraphError;
use crate::lp::LpError;
use crate::reductions::cnf::CnfError;
use crate::reductions::gadgets::GadgetError;
use crate::reductions::reduction::ReductionError;
use crate::spectrum::SpectrumError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

pub const THREADS_ENV: &str = "TRIREG_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// Feasible, verified, or constructed.
    Positive,
    /// Infeasible, unsatisfiable, or not uniform.
    Negative,
    /// Unknown or out of budget.
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Positive => EXIT_OK,
            Outcome::Negative => EXIT_NEGATIVE,
            Outcome::Unknown => EXIT_UNKNOWN,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub outcome: Outcome,
    pub text: String,
    /// Always an object with `command` and `outcome` keys.
    pub json: Value,
}

impl Report {
    pub(crate) fn new(command: &str, outcome: Outcome, text: String, mut json: Value) -> Self {
        if let Value::Object(m) = &mut json {
            m.insert("command".into(), Value::from(command));
            m.insert("outcome".into(), serde_json::to_value(outcome).expect("plain enum"));
        }
        Report { outcome, text, json }
    }
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub threads: usize,
    pub json: bool,
}

impl RunConfig {
    /// `--threads`, then `TRIREG_THREADS`, then the number of logical cores.
    pub fn resolve(flag: Option<usize>, env: Option<&str>, json: bool) -> Result<Self, CliError> {
        let threads = match (flag, env) {
            (Some(n), _) => n,
            (None, Some(s)) => s.trim().parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV}={s} is not a count")))?,
            (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if threads == 0 {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        Ok(RunConfig { threads, json })
    }
}

#[derive(Debug, Parser)]
#[command(name = "trireg", version, about = "Triangle-regular graphs, flip colorings and Cayley realizations")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; defaults to TRIREG_THREADS or the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph file for triangle-regularity and, optionally, the flip condition.
    Verify {
        file: PathBuf,
        #[arg(long)]
        flip: bool,
    },
    /// Cartesian product of two graph files.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build graphs or generating sets from the explicit constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Achievable neighborhood counts for degree r over abelian groups, as CSV.
    Spectrum {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 24)]
        max_order: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact density LPs: feasibility, flip scans and cutting planes.
    #[command(subcommand)]
    Lp(Lp),
    /// Build a coloring instance from a positive 3-CNF formula.
    Reduce {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Variable gadget fixture for the exact-count variant.
        #[arg(long)]
        gadget: Option<PathBuf>,
    },
    /// Search for a two-coloring of a graph file.
    Solve {
        #[arg(long, value_enum)]
        mode: VariantArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate subgroup of a symmetric set.
    Subgroup(SetArgs),
    /// Fourier coefficients of a symmetric set's indicator.
    Dft(SetArgs),
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Set file; its `group` line is checked against `--group` when both are given.
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub group: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Rc,
    Flip,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Product of cliques with degree r and c neighborhood edges.
    CliqueProduct {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generating set with c = C(r,2) - rx/2 + y.
    Thm13 {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        /// Skip the y window check and report the case shape.
        #[arg(long)]
        diagnostic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-color flip profile from cliques and bipartite factors.
    Flip3 {
        #[arg(long)]
        a1: u64,
    },
    /// Flip profile on t colors built on a searched base graph.
    UnboundedFlip {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        scale: Option<u64>,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Solve the density LP for (r, c) and build a graph from the witness.
    LpBuild {
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        c: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Lp {
    /// Feasibility of the density system for fixed r and c.
    Feasible {
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        c: Vec<u64>,
    },
    /// Flip feasibility over all increasing degree vectors in a box.
    FlipScan {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r1_max: u64,
        #[arg(long)]
        rt_max: u64,
        #[arg(long)]
        cuts: bool,
    },
    /// Flip system for one degree vector, refined with supersaturation cuts.
    Cuts {
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        #[arg(long, default_value_t = 50)]
        rounds: usize,
    },
}

/// Runs one parsed command on a pool of `config.threads` workers.
pub fn execute(cli: Cli, config: &RunConfig) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| commands::dispatch(cli.command))
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let env = std::env::var(THREADS_ENV).ok();
    let result = RunConfig::resolve(cli.threads, env.as_deref(), cli.json).and_then(|config| {
        let json = config.json;
        execute(cli, &config).map(|r| (r, json))
    });
    match result {
        Ok((report, json)) => {
            if json {
                println!("{}", report.json);
            } else {
                println!("{}", report.text);
            }
            report.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
