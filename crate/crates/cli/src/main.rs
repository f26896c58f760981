//! `dlab`: command-line front end for the Dirichlet L-function laboratory.
//!
//! Exit codes: 0 success, 2 domain error, 3 resource error, 4 audit or
//! incompleteness, 1 anything else.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use commands::Finished;
use config::RunConfig;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dlab", version, about = "Dirichlet L-functions and primes in progressions")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the characters mod q.
    Characters(commands::CharactersArgs),
    /// Critical-line zeros up to a height.
    Zeros(commands::ZerosArgs),
    /// psi(x; q, a) from the segmented sieve.
    Psi(commands::PsiArgs),
    /// S(Q; x) with its three-term decomposition over a range of Q.
    SweepS(commands::SweepArgs),
    /// Absolute discrepancy summed over the moduli in (Q, 2Q].
    Bfi(commands::BfiArgs),
    /// Certified constants of the main terms.
    Constants(commands::ConstantsArgs),
    /// Iterates of the exponent map with their closed form.
    Iterate(commands::IterateArgs),
    /// Logarithmically sampled remainder series and its moments.
    Distribution(commands::DistributionArgs),
    /// One-level density of low-lying zeros against the Fejer kernel.
    Density(commands::DensityArgs),
    /// Differenced explicit formula for every nonprincipal character mod q.
    ExplicitCheck(commands::ExplicitArgs),
    /// L(1/2, chi) for every character with modulus up to qmax.
    CentralSweep(commands::CentralArgs),
}

fn run(cli: &Cli) -> dirichlet_lab::Result<Finished> {
    let cfg = &cli.config;
    cfg.validate()?;
    if let Some(n) = cfg.threads {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Characters(a) => commands::characters(cfg, a),
        Command::Zeros(a) => commands::zeros(cfg, a),
        Command::Psi(a) => commands::psi(cfg, a),
        Command::SweepS(a) => commands::sweep_s(cfg, a),
        Command::Bfi(a) => commands::bfi(cfg, a),
        Command::Constants(a) => commands::constants(cfg, a),
        Command::Iterate(a) => commands::iterate(cfg, a),
        Command::Distribution(a) => commands::distribution(cfg, a),
        Command::Density(a) => commands::density(cfg, a),
        Command::ExplicitCheck(a) => commands::explicit_check(cfg, a),
        Command::CentralSweep(a) => commands::central(cfg, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Finished::Ok) => ExitCode::SUCCESS,
        Ok(Finished::Flagged) => {
            eprintln!("dlab: audit flagged results, see the output");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("dlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
