//! `galilei` command-line frontend. Every verb prints one JSON document on
//! stdout; diagnostics go to stderr.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use galilei::Error;

#[derive(Parser, Debug)]
#[command(name = "galilei", version, about = "Exact checks of Galilei-invariant wave equations")]
pub struct Cli {
    /// Seed for every randomized check (recorded in the output).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Commutation relations and Casimir checks of a representation.
    VerifyRep {
        /// Label or direct sum, e.g. "D(3,1,1)" or "D(2,1,0)+S1"; all base labels if omitted.
        #[arg(long)]
        rep: Option<String>,
    },
    /// Brute-force search for indecomposable (A, B, C) triples.
    Classify {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        /// Comma-separated rational entry set.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        entries: String,
        /// Upper bound on enumerated candidates.
        #[arg(long, default_value_t = 1u128 << 40)]
        limit: u128,
    },
    /// Solution space of the β₄ block equations for a label pair.
    SolveBeta {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compare computed solution spaces with the embedded tables.
    Appendix {
        #[arg(long, value_enum, default_value_t = Table::All)]
        table: Table,
    },
    /// Canonical systems and their identities.
    Catalog {
        /// System name or "all".
        #[arg(long, default_value = "all")]
        system: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Sampled momenta for the Proca and Rarita-Schwinger checks.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Spin content of a β-system.
    Spin {
        /// System name or "all".
        #[arg(long, default_value = "all")]
        system: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Expected spins, e.g. "1,0" or "1/2".
        #[arg(long)]
        expect: Option<String>,
    },
    /// Finite-boost covariance and Pauli-term invariance.
    Covariance {
        #[arg(long, default_value = "all")]
        system: String,
        #[arg(long, value_enum, default_value_t = CovMode::Symbolic)]
        mode: CovMode,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Couple a β-system to external fields and reduce to the physical block.
    Reduce {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Coupling::Minimal)]
        coupling: Coupling,
        #[arg(long, default_value = "lambda1", allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, default_value = "lambda2", allow_hyphen_values = true)]
        lambda2: String,
        /// Coefficient of β₀ in the spinor Λ = νβ₀ + μχ.
        #[arg(long, default_value = "nu", allow_hyphen_values = true)]
        nu: String,
        /// Coefficient of χ in the spinor Λ = νβ₀ + μχ.
        #[arg(long, default_value = "mu", allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Caps such as "lambda3:2,e:1"; enables the spin-orbit expansion.
        #[arg(long)]
        truncate: Option<String>,
    },
    /// Interacting Galilean Proca system.
    Proca {
        #[arg(long, default_value = "lambda", allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Lowest-order contraction of the relativistic DKP equations.
    ContractDkp,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// System parameter, e.g. nu=2 (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub param: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FieldArgs {
    /// Scalar potential A⁰ in x1, x2, x3.
    #[arg(long = "A0", allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Vector potential "A1;A2;A3".
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Polynomial degree cap on the potentials.
    #[arg(long, default_value_t = 2)]
    pub degree_cap: u32,
    /// Symbolic constant fields only (no field gradient).
    #[arg(long)]
    pub constant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    All,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CovMode {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coupling {
    Minimal,
    Anomalous,
}

/// 2 for bad input, 3 for faults inside the library.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::NotNilpotent { .. } | Error::Shape(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    galilei::par::init_from_env();
    match commands::run(&cli) {
        Ok(outcome) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{}", output::render(&cli, &outcome));
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("galilei: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
