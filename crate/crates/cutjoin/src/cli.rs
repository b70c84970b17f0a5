//! Argument parsing and dispatch for the `cutjoin` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cutjoin_core::Alpha;

use crate::cache::{Cache, CACHE_ENV};
use crate::commands::{self, Suite, VerifyParams};
use crate::report::{Format, Render};

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let v: u8 = s
        .parse()
        .map_err(|_| format!("expected 0 or 1, got {s:?}"))?;
    Alpha::from_u8(v).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "cutjoin",
    version,
    about = "Exact cut-and-join recursion for ψ, κ and Θ intersection numbers"
)]
pub struct Cli {
    /// Cache directory for computed levels.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator coefficients A_m, A_{k,m} (k < m) and C_k up to an s-degree.
    Coeffs {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        /// Largest weighted s-degree to list.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Computes levels of the expansion and stores them in the cache.
    Tau {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_level: u64,
        #[arg(long, default_value_t = 0)]
        s_degree: u32,
        /// Print only this level.
        #[arg(long)]
        level: Option<usize>,
        /// Print connected free energies instead.
        #[arg(long)]
        free_energy: bool,
    },
    /// One intersection number.
    Intersect {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        /// ψ exponents, comma separated.
        #[arg(long, value_delimiter = ',')]
        psi: Vec<u32>,
        /// κ indices, comma separated, each at least 1.
        #[arg(long, value_delimiter = ',')]
        kappa: Vec<u32>,
        /// Expected genus; a mismatch reports zero.
        #[arg(long)]
        genus: Option<u32>,
        /// Refuse to go beyond this level.
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Volume polynomial in pi2 and L_i^2.
    Volume {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        #[arg(long)]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        npoints: u32,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Runs a verification suite; exits 0 iff it passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Family to check; both when omitted.
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<Alpha>,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long)]
        s_degree: Option<u32>,
        /// Largest index for the closed-form suite.
        #[arg(long)]
        max_m: Option<i64>,
    },
}

fn emit(out: &dyn Render, format: Format) -> anyhow::Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.render(format).as_bytes())?;
    Ok(())
}

/// Runs one parsed invocation and returns the process exit status.
pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cache = cli.cache.as_ref().map(Cache::new);
    let cache = cache.as_ref();
    match cli.command {
        Command::Coeffs { alpha, order } => emit(&commands::coeffs(alpha, order)?, cli.format)?,
        Command::Tau {
            alpha,
            max_level,
            s_degree,
            level,
            free_energy,
        } => {
            let out = commands::tau(
                cache,
                alpha,
                max_level as usize,
                s_degree,
                level,
                free_energy,
            )?;
            emit(&out, cli.format)?
        }
        Command::Intersect {
            alpha,
            psi,
            kappa,
            genus,
            max_level,
        } => emit(
            &commands::intersect(cache, alpha, psi, kappa, genus, max_level)?,
            cli.format,
        )?,
        Command::Volume {
            alpha,
            genus,
            npoints,
            max_level,
        } => emit(
            &commands::volume(cache, alpha, genus, npoints, max_level)?,
            cli.format,
        )?,
        Command::Verify {
            suite,
            alpha,
            max_level,
            s_degree,
            max_m,
        } => {
            let alphas = alpha.map_or_else(|| Alpha::ALL.to_vec(), |a| vec![a]);
            let out = commands::verify(
                suite,
                &VerifyParams {
                    alphas,
                    max_level,
                    s_degree,
                    max_m,
                },
            )?;
            emit(&out, cli.format)?;
            if !out.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
