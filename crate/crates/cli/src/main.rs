//! `qcover`: decide Q-matricity and complementary-cone coverings exactly.
//!
//! Exit codes: 0 yes/pass, 1 no/fail, 2 input or usage error, 3 when only a
//! sampled answer exists.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qcover::gen::Profile;
use qcover::lcp::PointRef;

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "qcover", version, about = "Exact Q-matrix and complementary-cone covering decisions")]
struct Cli {
    /// Print the JSON verdict instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON verdict to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json_out: Option<PathBuf>,
    /// Include wall-clock time in the output (makes JSON non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a matrix (CSV or JSON), or decide the covering of an instance.
    Classify { path: PathBuf },
    /// Decide whether one generator is surrounded.
    Surround {
        path: PathBuf,
        /// `i,s` or `i,t` with one-based `i`; `s2` and `t3` also work.
        #[arg(long)]
        point: PointRef,
    },
    /// Build the cell complex of a three-dimensional instance.
    Cells {
        path: PathBuf,
        /// Write a stereographic picture of the complex.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write random instances as JSON files.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Profile::Uniform)]
        profile: Profile,
        /// Output directory, created if missing.
        #[arg(long = "out", value_name = "DIR")]
        dir: PathBuf,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("QCOVER_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("QCOVER_THREADS must be a positive integer, found {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let start = Instant::now();
    let mut outcome = match cli.command {
        Command::Classify { path } => commands::classify(&path)?,
        Command::Surround { path, point } => commands::surround(&path, point)?,
        Command::Cells { path, svg } => commands::cells(&path, svg)?,
        Command::Verify { suite, trials, seed } => commands::verify(&suite, trials, seed)?,
        Command::Gen {
            n,
            count,
            seed,
            profile,
            dir,
        } => commands::gen(n as usize, count, seed, profile, &dir)?,
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    let envelope = outcome.envelope(elapsed);
    let rendered = serde_json::to_string_pretty(&envelope).expect("serializable") + "\n";
    if let Some(out) = &cli.json_out {
        outcome.files.push((out.clone(), rendered.clone().into_bytes()));
    }
    output::write_all_or_nothing(&outcome.files)?;
    if cli.json {
        print!("{rendered}");
    } else {
        print!("{}", outcome.text);
        if let Some(ms) = elapsed {
            println!("elapsed: {ms} ms");
        }
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
