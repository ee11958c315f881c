//! `totref`: analyze graphs, build and lift totally acyclic complexes, and
//! verify complex files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use totref_core::{FieldSpec, Fp, Rational, Scalar, DEFAULT_PRIME};

use commands::{BuildMode, Outcome, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "totref", version, about = "Totally reflexive modules over Stanley-Reisner rings of graphs")]
struct Cli {
    /// Prime modulus (one of the compiled primes).
    #[arg(long, global = true, conflicts_with = "rational")]
    prime: Option<u64>,
    /// Work over the rationals.
    #[arg(long, global = true)]
    rational: bool,
    /// Degree bound D of the truncated algebras.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(2..))]
    degree_bound: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Resampling budget for random factory blocks.
    #[arg(long, global = true, default_value_t = totref_core::factory::DEFAULT_RETRIES)]
    retries: usize,
    /// Random candidates tried by the exact zero divisor search.
    #[arg(long, global = true, default_value_t = 2000)]
    trials: usize,
    #[arg(long, global = true, default_value_t = totref_core::factory::DEFAULT_FORWARD)]
    forward: usize,
    #[arg(long, global = true, default_value_t = totref_core::factory::DEFAULT_BACKWARD)]
    backward: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Where to write the complex file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full condition report and verdict for a graph file.
    Analyze { graph: PathBuf },
    /// Build a certified window from exact zero divisors or the block construction.
    Build {
        graph: Option<PathBuf>,
        /// Use the built-in ten-vertex graph.
        #[arg(long = "ten-vertex", alias = "section4")]
        ten_vertex: bool,
        #[arg(long, value_enum, default_value_t = BuildMode::Ezd)]
        mode: BuildMode,
        /// Use the explicit periodic blocks (factory mode).
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Lift a window along its reduction chain.
    Lift {
        complex: PathBuf,
        /// Chain stage to stop at (0 is the Stanley-Reisner ring).
        #[arg(long, default_value_t = 0)]
        to_stage: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check composition, exactness, dual exactness, minimality and period.
    Verify {
        complex: PathBuf,
        /// Highest algebra degree to check (defaults to everything available).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Rank-two windows over the ten-vertex ring.
    Factory {
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        out: OutputArg,
    },
}

/// Moduli the field type can be instantiated with.
macro_rules! with_field {
    ($spec:expr, $f:ident $args:tt) => {
        match $spec {
            FieldSpec::Rational => $f::<Rational> $args,
            FieldSpec::Gf { prime } => with_field!(@primes prime, $f $args,
                1_073_741_789, 2_147_483_647, 1_000_000_007, 65_521, 32_003, 101, 7, 5, 3),
        }
    };
    (@primes $p:expr, $f:ident $args:tt, $($q:literal),*) => {
        match $p {
            $($q => $f::<Fp<$q>> $args,)*
            other => bail!("prime {other} is not compiled in; use one of {:?}", [$($q),*]),
        }
    };
}

fn field_from_flags(cli: &Cli) -> Option<FieldSpec> {
    if cli.rational {
        Some(FieldSpec::Rational)
    } else {
        cli.prime.map(|prime| FieldSpec::Gf { prime })
    }
}

fn config(cli: &Cli, canonical: bool, output: Option<PathBuf>) -> RunConfig {
    RunConfig {
        degree_bound: cli.degree_bound as usize,
        seed: cli.seed,
        retries: cli.retries,
        trials: cli.trials,
        forward: cli.forward,
        backward: cli.backward,
        canonical,
        json: cli.json,
        output,
    }
}

fn analyze<F: Scalar>(p: &std::path::Path, c: &RunConfig) -> Result<Outcome> {
    commands::analyze::<F>(p, c)
}
fn build<F: Scalar>(g: Option<&std::path::Path>, s: bool, m: BuildMode, c: &RunConfig) -> Result<Outcome> {
    commands::build::<F>(g, s, m, c)
}
fn lift<F: Scalar>(p: &std::path::Path, t: usize, c: &RunConfig) -> Result<Outcome> {
    commands::lift::<F>(p, t, c)
}
fn verify<F: Scalar>(p: &std::path::Path, b: Option<usize>, c: &RunConfig) -> Result<Outcome> {
    commands::verify::<F>(p, b, c)
}
fn factory<F: Scalar>(c: &RunConfig) -> Result<Outcome> {
    commands::factory::<F>(c)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let default = FieldSpec::Gf { prime: DEFAULT_PRIME };
    match &cli.command {
        Command::Analyze { graph } => {
            let cfg = config(cli, false, None);
            with_field!(field_from_flags(cli).unwrap_or(default), analyze(graph, &cfg))
        }
        Command::Build { graph, ten_vertex, mode, canonical, out } => {
            let cfg = config(cli, *canonical, out.output.clone());
            with_field!(field_from_flags(cli).unwrap_or(default), build(graph.as_deref(), *ten_vertex, *mode, &cfg))
        }
        Command::Lift { complex, to_stage, out } => {
            let cfg = config(cli, false, out.output.clone());
            let spec = match field_from_flags(cli) {
                Some(s) => s,
                None => commands::peek_field(complex)?,
            };
            with_field!(spec, lift(complex, *to_stage, &cfg))
        }
        Command::Verify { complex, max_degree } => {
            let cfg = config(cli, false, None);
            let spec = match field_from_flags(cli) {
                Some(s) => s,
                None => commands::peek_field(complex)?,
            };
            with_field!(spec, verify(complex, *max_degree, &cfg))
        }
        Command::Factory { canonical, out } => {
            let cfg = config(cli, *canonical, out.output.clone());
            with_field!(field_from_flags(cli).unwrap_or(default), factory(&cfg))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
