//! Command-line front end for `moment_lab`.

pub mod commands;
pub mod config;
pub mod error;
pub mod forms;
pub mod output;
pub mod run;
pub mod selftest;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
pub use run::{run, RunSummary};

#[derive(Debug, Parser)]
#[command(name = "moment-lab", version, about = "Twisted GL(3) central values and their first moment")]
pub struct Cli {
    /// Worker threads for the parallel phases (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate characters and check the orthogonality and Gauss-sum identities.
    Chars(commands::CharsArgs),
    /// Build, export and diagnose a coefficient table.
    Coeffs(commands::CoeffsArgs),
    /// One central value.
    Lvalue(commands::LvalueArgs),
    /// The averaged first moment over a ladder of families.
    Moment(commands::MomentArgs),
    /// The mean square of the sums `B_k`.
    Luo(commands::LuoArgs),
    /// Quick fixture suite.
    Selftest,
    /// Special functions at a point.
    Special(commands::SpecialArgs),
    /// Every report for one configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Resource(e.to_string()))?;
    }
    match &cli.command {
        Command::Chars(a) => commands::chars(a),
        Command::Coeffs(a) => commands::coeffs(a),
        Command::Lvalue(a) => commands::lvalue(a),
        Command::Moment(a) => commands::moment(a),
        Command::Luo(a) => commands::luo(a),
        Command::Selftest => selftest::selftest(),
        Command::Special(a) => commands::special(a),
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(config)?;
            let summary = run(&cfg)?;
            for f in &summary.files {
                println!("{}", f.display());
            }
            Ok(())
        }
    }
}
