//! `abelian3`: count, enumerate and tabulate subgroups of `Z_m × Z_n × Z_r`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod commands;
mod output;

use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use abelian3::rank3::DEFAULT_ELEMENT_BOUND;
use abelian3::Group3;

use commands::{Failure, PolyKind};
use output::{Format, Sink};

const BOUND_VAR: &str = "ABELIAN3_ELEMENT_BOUND";

#[derive(Parser)]
#[command(name = "abelian3", version, about = "Subgroups of finite abelian groups of rank at most 3")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Suppress headers and summaries; records are still printed.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of subgroups of Z_m x Z_n x Z_r.
    Count {
        m: u64,
        n: u64,
        r: u64,
        /// Only subgroups of this order.
        #[arg(long, conflicts_with = "cyclic")]
        order: Option<u128>,
        /// Only cyclic subgroups.
        #[arg(long)]
        cyclic: bool,
    },
    /// One record per subgroup: sextuple, triangular basis and order.
    Enumerate {
        m: u64,
        n: u64,
        r: u64,
        /// Also list the elements of each subgroup.
        #[arg(long)]
        elements: bool,
    },
    /// Regenerate one of the reference tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Table 1: n <= limit (50); table 2: nu <= limit (10); table 3: nu3 <= limit (4).
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Print a polynomial in p.
    Poly {
        #[command(subcommand)]
        kind: PolyCommand,
        /// Also evaluate at this prime.
        #[arg(long, global = true)]
        at: Option<u64>,
    },
    /// Number of subgroups of type mu in a p-group of type lambda.
    TypeCount {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<u32>,
        #[arg(long)]
        at: Option<u64>,
    },
    /// Compare enumeration and counting against brute force for all mnr <= max-order.
    Verify {
        #[arg(long, default_value_t = 120)]
        max_order: u64,
        /// Corrupt the coupling parameter (X = 1) to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Partial sums of s(n, n, n) against the asymptotic main term.
    Asymptotic {
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000,1000000")]
        x_values: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        prime_limit: u64,
    },
}

#[derive(Subcommand)]
enum PolyCommand {
    /// s(p^nu1, p^nu2, p^nu3), optionally restricted to order p^k.
    Symbolic {
        nu1: u32,
        nu2: u32,
        nu3: u32,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Closed form of s(p^nu, p^nu, p^nu).
    General { nu: u32 },
    /// Gaussian binomial [r k]_p.
    Gaussian { r: u32, k: u32 },
    /// h(p^nu).
    H { nu: u32 },
    /// Gcd-sum P(p^nu).
    GcdSum { nu: u32 },
}

fn element_bound() -> Result<u64, Failure> {
    match std::env::var(BOUND_VAR) {
        Err(_) => Ok(DEFAULT_ELEMENT_BOUND),
        Ok(text) => {
            text.trim().parse::<u64>().ok().filter(|&b| b > 0).ok_or_else(|| {
                Failure::Usage(format!("{BOUND_VAR} must be a positive integer, got {text:?}"))
            })
        }
    }
}

fn group(m: u64, n: u64, r: u64) -> Result<Group3, Failure> {
    Ok(Group3::new(m, n, r)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut sink = Sink::new(cli.format, cli.quiet, BufWriter::new(stdout.lock()));
    let result = match cli.command {
        Command::Count { m, n, r, order, cyclic } => {
            commands::count(&mut sink, group(m, n, r)?, order, cyclic)
        }
        Command::Enumerate { m, n, r, elements } => {
            commands::enumerate(&mut sink, group(m, n, r)?, elements, element_bound()?)
        }
        Command::Table { which, limit } => commands::table(&mut sink, which, limit),
        Command::Poly { kind, at } => {
            let kind = match kind {
                PolyCommand::Symbolic { nu1, nu2, nu3, order } => {
                    PolyKind::Symbolic { nu: [nu1, nu2, nu3], order }
                }
                PolyCommand::General { nu } => PolyKind::General { nu },
                PolyCommand::Gaussian { r, k } => PolyKind::Gaussian { r, k },
                PolyCommand::H { nu } => PolyKind::H { nu },
                PolyCommand::GcdSum { nu } => PolyKind::GcdSum { nu },
            };
            commands::poly(&mut sink, kind, at)
        }
        Command::TypeCount { lambda, mu, at } => commands::type_count_cmd(&mut sink, lambda, mu, at),
        Command::Verify { max_order, inject_fault } => {
            commands::verify(&mut sink, max_order, element_bound()?, inject_fault)
        }
        Command::Asymptotic { x_values, prime_limit } => {
            commands::asymptotic(&mut sink, &x_values, prime_limit)
        }
    };
    // flush whatever was produced before reporting a failure
    sink.finish()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("abelian3: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("abelian3: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("abelian3: {e}");
            ExitCode::from(2)
        }
    }
}
