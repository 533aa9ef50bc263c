//! Command-line front end for the GHZ hidden-variable model.
//!
//! Exit codes: 0 on success or agreement, 1 when a check fails, 2 on usage or
//! parse errors.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ghz-lhv")]
#[command(about = "Communication-assisted local hidden-variable model for GHZ measurements")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hidden-variable table of the GHZ state
    Table(TableArgs),
    /// Classify a joint Pauli measurement with the model and an oracle
    Classify(ClassifyArgs),
    /// Run the multi-party protocol on seeded random draws
    Protocol(ProtocolArgs),
    /// Run exhaustive verification sweeps
    Verify(VerifyArgs),
    /// Evolve stabilizer generators through a circuit
    Tableau(TableauArgs),
}

#[derive(Args)]
pub struct Common {
    /// Emit JSON instead of human-readable text
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: usize,
    /// Show every table from |0…0⟩ through the preparation circuit
    #[arg(long)]
    pub evolution: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OracleArg {
    Analytic,
    Statevector,
    Tableau,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: usize,
    /// Pauli product such as XYY or -ZZI (leftmost letter is qubit 1)
    #[arg(long)]
    pub observable: String,
    #[arg(long, value_enum, default_value = "analytic")]
    pub oracle: OracleArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct ProtocolArgs {
    #[arg(long)]
    pub n: usize,
    /// Local measurement choices, one letter per qubit
    #[arg(long)]
    pub observable: String,
    /// Qubit sets such as "1,2|3|4"; the first set is Alice's (default: singletons)
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VerifyMode {
    Joint,
    Protocol,
    CnotRules,
    Tableau,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub mode: VerifyMode,
    /// Qubit count or inclusive range such as "2..8"
    #[arg(long)]
    pub n: Option<String>,
    /// Protocol mode: partition to sweep (default: singletons)
    #[arg(long, conflicts_with = "all_partitions")]
    pub partition: Option<String>,
    /// Protocol mode: sweep every set partition
    #[arg(long)]
    pub all_partitions: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct TableauArgs {
    #[arg(long)]
    pub n: usize,
    /// Gates such as "H(1) CNOT(1,2)" (default: the GHZ preparation circuit)
    #[arg(long)]
    pub circuit: Option<String>,
    /// Print the generators after every gate
    #[arg(long)]
    pub evolution: bool,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(args) => commands::table(args),
        Command::Classify(args) => commands::classify(args),
        Command::Protocol(args) => commands::protocol(args),
        Command::Verify(args) => commands::verify(args),
        Command::Tableau(args) => commands::tableau(args),
    };
    match result {
        Ok(report) => {
            print!("{}", report.output);
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
