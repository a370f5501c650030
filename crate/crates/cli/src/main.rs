//! `linkorbit`: generate, export and verify link orbit categories, linking
//! simplices and isovariant complexes from the terminal.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or IO error.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "linkorbit", version, about = "Isovariant homotopy scaffolding for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Family name (c2, c3, c4, v4, s3, d4, q8, c2*c2, ...) or a group JSON file.
    #[arg(long, short, default_value = "c2")]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subgroup lattice with orders, normality and normalizers.
    Lattice {
        #[command(flatten)]
        group: GroupArg,
        /// Print the group as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// Subgroup chains, their multi-Weil groups and generating cells.
    Chains {
        #[command(flatten)]
        group: GroupArg,
        /// Also list generating (acyclic) cofibrations up to this disk dimension.
        #[arg(long, allow_negative_numbers = true)]
        cells: Option<i64>,
    },
    /// The link orbit category: summary, DOT or JSON.
    Category {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Drop endomorphisms from the DOT picture (and implies --dot).
        #[arg(long)]
        no_self_maps: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Linking simplices.
    Simplex {
        #[command(subcommand)]
        action: SimplexAction,
    },
    /// Check a map file for isovariance.
    Check {
        /// Map JSON to check.
        #[arg(long)]
        isovariant: PathBuf,
        /// Also run the weak-equivalence obstruction on the strata.
        #[arg(long)]
        we: bool,
        /// Group to use when the map file carries none.
        #[arg(long)]
        group: Option<String>,
    },
    /// The coend of a diagram over the link orbit category.
    Coend {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, conflicts_with = "representable")]
        diagram: Option<PathBuf>,
        /// Use the representable diagram at this chain and certify the result.
        #[arg(long)]
        representable: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write the diagram itself as JSON.
        #[arg(long)]
        emit_diagram: Option<PathBuf>,
        #[arg(long, default_value_t = linkorbit_core::colimit::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The C2 flip disk, built by isovariant cell attachment.
    Flipdisk {
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write the collapse map disk → point.
        #[arg(long)]
        emit_collapse: Option<PathBuf>,
        /// Write the map point → fixed vertex of the axis.
        #[arg(long)]
        emit_axis: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = linkorbit_core::colimit::DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SimplexAction {
    /// Cell model, strata and stabilizers of Δ^chain.
    Describe {
        #[command(flatten)]
        group: GroupArg,
        /// Chain name as printed by `chains`, e.g. `e<C2`.
        #[arg(long)]
        chain: String,
        /// Print the realization as complex JSON.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Category,
    Functor,
    LemmaPi0,
    Coend,
    Classification,
    All,
}

/// Pass or fail of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn and(self, other: Status) -> Status {
        if self == Status::Pass && other == Status::Pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    eprintln!("config: {}", commands::config_line(&cli.command));
    match commands::run(cli.command) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
