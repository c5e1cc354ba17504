//! Command-line front end for `ffheights`.
//!
//! Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad
//! input.

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ffheights", version, about = "Canonical heights on elliptic curves over F_p(t)")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized polynomial factorization.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduction data at every bad place.
    Analyze { curve: PathBuf },
    /// Canonical height with its per-place decomposition.
    Height {
        curve: PathBuf,
        points: PathBuf,
        /// Local-height method used for every place.
        #[arg(long, default_value = "closed_form")]
        method: String,
        /// Also print the first terms of the doubling sequence.
        #[arg(long)]
        oracle: Option<u32>,
    },
    /// Local heights by every registered method, side by side.
    LocalHeights {
        curve: PathBuf,
        points: PathBuf,
        /// Restrict to one method.
        #[arg(long)]
        method: Option<String>,
    },
    /// Check the lower bound for canonical heights on the given points.
    LehmerCheck {
        curve: PathBuf,
        points: PathBuf,
        /// Use the bound for curves with constant j-invariant.
        #[arg(long)]
        isotrivial: bool,
    },
    /// Grid search for the constant in the lower bound.
    OptimizeConstant {
        #[arg(long, default_value_t = 1000)]
        grid: u32,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        #[arg(long = "D", default_value_t = 1.0)]
        d: f64,
    },
    /// Count points of small height in the subgroup spanned by generators.
    CountSmall {
        curve: PathBuf,
        generators: PathBuf,
        /// Height bound as p/q; defaults to the counting bound's B when
        /// --delta and --eps are given.
        #[arg(long = "B")]
        bound: Option<String>,
        /// Torsion points to translate by.
        #[arg(long)]
        torsion: Option<PathBuf>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Intersection matrix, inverse and correction table of a fiber type.
    FiberTable {
        /// I, II, III, IV, IStar, IVStar, IIIStar or IIStar.
        #[arg(long = "type")]
        kind: String,
        #[arg(long = "M")]
        m: Option<u32>,
    },
    /// Evaluate a e0 + b sum 1/e_i against (c a^2 b sum e_i)^{1/3}.
    Inequality {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        e: Vec<String>,
        #[arg(long, default_value = "27/4")]
        constant: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(seed) = cli.seed {
        ffheights::funcfield::set_seed(seed);
    }
    match commands::run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"))
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
