use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Tripartite Bell inequalities: classical bounds, facet certificates,
/// quantum violations, noise thresholds and parameter sweeps.
#[derive(Debug, Parser)]
#[command(name = "tribell", version)]
pub struct Cli {
    /// Seed for every randomized search (overrides the config file).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    /// TOML file with optimizer settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Number of optimizer restarts (overrides the config file).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the known inequalities.
    Catalog {
        #[arg(long)]
        form: Option<FormArg>,
        /// Only entries with this residue modulus.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Exact classical maximum by enumerating deterministic strategies.
    Bound {
        /// Catalog name or path to an inequality file.
        name: String,
    },
    /// Facet check with exact affine rank.
    Tight {
        name: String,
        /// Write the facet certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow outcome alphabets above 5.
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Quantum value, ratio to the bound and noise threshold.
    Violate {
        name: String,
        #[arg(long, value_enum, default_value_t = StateArg::Ghz)]
        state: StateArg,
        /// Angle of the generalized GHZ or W state.
        #[arg(long)]
        xi: Option<f64>,
        /// Second angle of the generalized W state.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum, default_value_t = SettingsArg::Optimize)]
        settings: SettingsArg,
        /// White-noise weight F in [0, 1].
        #[arg(long)]
        noise: Option<f64>,
        /// Write the measurement settings here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-outcome probabilities at the reference settings against the exact table.
    Table1 {
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimized violation across a one-parameter state family.
    Sweep {
        /// One or more inequalities; several names share one plot.
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Ghz)]
        family: FamilyArg,
        /// Fixed beta for the W family.
        #[arg(long)]
        beta: Option<f64>,
        /// Number of uniform grid points on [0, pi/2].
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
        /// Write an SVG plot of ratio against xi.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the two-party restriction and the correlation-form equivalences.
    ReduceCheck {
        /// Run the checks on a deliberately corrupted coefficient; expected to fail.
        #[arg(long)]
        self_test: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Probability,
    Correlation,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Ghz,
    W,
    Product,
    Random,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SettingsArg {
    Paper,
    Optimize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ghz,
    W,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Catalog { .. } => "catalog",
            Command::Bound { .. } => "bound",
            Command::Tight { .. } => "tight",
            Command::Violate { .. } => "violate",
            Command::Table1 { .. } => "table1",
            Command::Sweep { .. } => "sweep",
            Command::ReduceCheck { .. } => "reduce-check",
        }
    }
}
