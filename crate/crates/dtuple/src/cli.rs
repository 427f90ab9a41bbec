use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, ExtendArgs, SearchArgs, WChoice};
use crate::demo;
use crate::report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "dtuple", version, about = "Rational Diophantine triples with strong pairs, their sextuple extensions and transports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WArg {
    #[value(name = "W1")]
    W1,
    #[value(name = "W2")]
    W2,
    #[value(name = "P")]
    P,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for points up to a height bound and merge them into the cache.
    Search {
        #[arg(long, default_value_t = 200)]
        max_u_height: u64,
        /// Height cap on reconstructed v values.
        #[arg(long, default_value_t = 1_000_000)]
        v_cap: u64,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value = "./cpoints.json")]
        cache: PathBuf,
    },
    /// Evaluate the family triples at a point, with certificates.
    Families {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: Option<u8>,
    },
    /// Extend a family triple to sextuples for a range of n.
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: u8,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n_from: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        n_to: i64,
    },
    /// Move a family triple along W1, W2 or P and compare with the expected family.
    Iso {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: u8,
        #[arg(long, value_enum)]
        w: WArg,
    },
    /// Re-verify every tuple in a JSON file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Rerun the worked example and print a pass/fail checklist.
    Demo,
}

pub fn run(cli: Cli) -> RunReport {
    match cli.command {
        Command::Search {
            max_u_height,
            v_cap,
            jobs,
            cache,
        } => commands::search(&SearchArgs {
            max_u_height,
            v_cap,
            jobs,
            cache,
        }),
        Command::Families { u, v, family } => commands::families(&u, &v, family),
        Command::Extend {
            u,
            v,
            family,
            n_from,
            n_to,
        } => commands::extend(&ExtendArgs {
            u,
            v,
            family,
            n_from,
            n_to,
            jobs: default_jobs(),
        }),
        Command::Iso { u, v, family, w } => {
            let w = match w {
                WArg::W1 => WChoice::W1,
                WArg::W2 => WChoice::W2,
                WArg::P => WChoice::P,
            };
            commands::iso(&u, &v, family, w)
        }
        Command::Verify { file } => commands::verify(&file),
        Command::Demo => demo::run(&demo::example_triple()),
    }
}
