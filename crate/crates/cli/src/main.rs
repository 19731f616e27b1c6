//! `borel-orbits`: canonicalize anti-symmetric matrices, export the orbit
//! poset, and run the invariant suites.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when a
//! verification fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Involution counts grow quickly; the poset command warns past this size.
const POSET_WARN_N: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "borel-orbits", version, about = "Borel congruence orbits of anti-symmetric matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce an anti-symmetric matrix to its orbit's monomial form.
    Canonicalize {
        /// Matrix file: a line with n, then n rows of n rationals.
        file: PathBuf,
    },
    /// Emit the orbit poset for S_n.
    Poset {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run invariant checks and report pass/fail per check.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of: grading, dimension, secfm, bruhat,
        /// invariance, pfaffian, intervals. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
    },
    /// Print both rank formulas for one involution.
    Rank {
        #[arg(long)]
        n: usize,
        /// "e" or cycles such as "(1,4)(2,3)".
        involution: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

pub enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
        }
    }
}

impl From<borel_orbits::Error> for Failure {
    fn from(e: borel_orbits::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Canonicalize { file } => commands::canonicalize(&file),
        Command::Poset { n, format, out } => {
            if n > POSET_WARN_N {
                eprintln!("warning: n = {n} exceeds {POSET_WARN_N}; the poset may be very large");
            }
            commands::poset(n, format, out.as_deref())
        }
        Command::Verify {
            n,
            checks,
            seed,
            trials,
            jobs,
        } => commands::verify(n, checks, seed, trials as usize, jobs.map(|j| j as usize)),
        Command::Rank { n, involution } => commands::rank(n, &involution),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = failure.exit_code();
            match failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Verification(output) => print!("{output}"),
            }
            ExitCode::from(code)
        }
    }
}
