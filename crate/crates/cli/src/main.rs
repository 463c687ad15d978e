mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rinfty",
    version,
    about = "Twisted conjugacy experiments over subrings of F_q(t)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

/// Scalars: `F_q` with `q = p^e`, and for ring commands the localization at
/// the listed irreducibles.
#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Field order, as an alternative to `--p`/`--e`.
    #[arg(long)]
    pub q: Option<u32>,
    /// Comma-separated monic irreducibles to invert, e.g. `t` or `t,t^2+1`.
    #[arg(long, default_value = "")]
    pub denoms: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace-degree certificates for x_m in SL_n(R).
    Traces {
        #[command(flatten)]
        field: FieldArgs,
        /// The polynomial from which the fixed element s is built.
        #[arg(long, default_value = "t")]
        f: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
    },
    /// Power identities, trace doubling and unit obstructions per family.
    WitnessCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "SOodd")]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "t")]
        f: String,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        /// Semicolon-separated values of lambda replacing s, s^2, ..., s^k_max.
        #[arg(long)]
        lambdas: Option<String>,
    },
    /// Reidemeister number of a finite group by orbit partition and Burnside.
    Reidemeister {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "id")]
        aut: String,
        /// Fail unless the count equals this value.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Normal-form composition against sequential application on random data.
    AutCompose {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
    /// The element s fixed by every automorphism of R.
    FixedS {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "t")]
        f: String,
    },
    /// The reflection suite for D_4.
    D4 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "t")]
        f: String,
        #[arg(long, default_value = "tau")]
        graph: String,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} certificate(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
