//! Command-line front end for `tvreg`: CSV ingestion, the simulation study,
//! model selection reports and lattice exports for plotting.
//!
//! Exit codes are 0 on success, 2 for unreadable input, 3 for numerical
//! failures and 4 for configuration errors.

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod ingest;

pub use error::{CliError, CliResult};

use config::{Cli, Command};

/// Runs a parsed command and returns its rendered output.
pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Simulate(a) => commands::cmd_simulate(a),
        Command::Study(a) => commands::cmd_study(a),
        Command::Select(a) => commands::cmd_select(a),
        Command::Fit(a) => commands::cmd_fit(a),
        Command::Bandwidths(a) => commands::cmd_bandwidths(a),
    }
}

/// Where a command writes its output.
pub fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    let out = match &cli.command {
        Command::Simulate(a) => &a.out,
        Command::Study(a) => &a.out,
        Command::Select(a) => &a.out,
        Command::Fit(a) => &a.out,
        Command::Bandwidths(a) => &a.out,
    };
    out.output.as_deref()
}
