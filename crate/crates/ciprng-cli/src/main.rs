//! Command-line front end: wire a JSON run config to corpus generation, the
//! battery, and power scans.
//!
//! Exit codes are a stable contract: 0 all tests passed, 2 configuration
//! error, 3 I/O error, 4 statistical failure.

mod commands;
mod run_config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ciprng", version, about = "Chaotic-iteration PRNG toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    /// One '0'/'1' character per bit (NIST STS input convention).
    Ascii,
    /// Little-endian 32-bit words (dieharder raw input convention).
    Binary,
}

#[derive(Subcommand)]
enum Command {
    /// Generate corpus files and a manifest from a run config.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FileFormat,
        /// Output directory for sequence files and manifest.json.
        #[arg(long)]
        out: PathBuf,
        /// Replace every configured seed with values derived from this one.
        #[arg(long)]
        seed_override: Option<u64>,
    },
    /// Run the battery and print the JSON report on stdout.
    Test {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated subset of tests to run (overrides the config).
        #[arg(long)]
        tests: Option<String>,
        #[arg(long)]
        seed_override: Option<u64>,
    },
    /// Scan the functional power of a multiple_xor source.
    ScanPower {
        #[arg(long)]
        config: PathBuf,
        /// Inclusive power range `LO..HI` (overrides the config scan range).
        #[arg(long)]
        scan: Option<String>,
        #[arg(long)]
        tests: Option<String>,
        #[arg(long)]
        seed_override: Option<u64>,
    },
}

/// Error carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: configuration or validation problem.
    Config(String),
    /// Exit 3: filesystem problem.
    Io(String),
    /// Exit 4: statistical failure.
    Stat(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Stat(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Stat(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { config, format, out, seed_override } => {
            commands::generate(&config, format, &out, seed_override)
        }
        Command::Test { config, tests, seed_override } => {
            commands::test(&config, tests.as_deref(), seed_override)
        }
        Command::ScanPower { config, scan, tests, seed_override } => {
            commands::scan_power(&config, scan.as_deref(), tests.as_deref(), seed_override)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
