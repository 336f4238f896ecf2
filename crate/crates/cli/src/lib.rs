//! Command-line driver: every subcommand produces a [`Report`], rendered as
//! JSON or text from the same value.

pub mod commands;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{execute, CliError};
pub use report::{Report, Status};

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_PROBES: usize = 5;

#[derive(Parser, Debug, Clone)]
#[command(name = "unimodular", version, about = "Exact verification of configuration results for extremal even unimodular lattices")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for all randomized probes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Leave the timing field out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build the configuration system, take its determinant and analyse the roots.
    Verify {
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum)]
        formulation: Option<FormulationArg>,
    },
    /// Extremal theta series prefix and kissing number.
    Theta {
        #[arg(long)]
        rank: u32,
        /// Number of coefficients, default `m + 10`.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Dump the extended matrix, row tags and determinant.
    System {
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum)]
        formulation: Option<FormulationArg>,
    },
    /// Brute-force checks on E8 or the Leech lattice.
    Oracle {
        #[arg(long, value_enum)]
        lattice: LatticeArg,
        /// Comma-separated: theta, kissing, shells, design:K, profile.
        #[arg(long, value_delimiter = ',', default_value = "theta,kissing,shells,profile")]
        checks: Vec<String>,
        /// Probe vectors per design degree.
        #[arg(long, default_value_t = DEFAULT_PROBES)]
        probes: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulationArg {
    Moment,
    Zonal,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeArg {
    E8,
    Leech,
}

impl Cli {
    pub fn render(&self, report: &Report) -> String {
        match self.format {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        }
    }
}
