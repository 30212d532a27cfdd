mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffcn_core::theta::DEFAULT_MAX_DEG_CEILING;
use ffcn_core::DEFAULT_SEED;

use crate::output::Format;

/// Class numbers, Hurwitz class numbers and theta tables over F_q[t].
#[derive(Parser, Debug)]
#[command(name = "ffcn", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for randomised steps; FFCN_SEED takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for table generation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest accepted --max-deg.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEG_CEILING)]
    max_deg_ceiling: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// h(d), w(d) of the order A[√d].
    ClassNumber {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: String,
    },
    /// Modified Hurwitz class number H^{n+,n-}(d).
    Hurwitz {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1")]
        nplus: String,
        #[arg(long, default_value = "1")]
        nminus: String,
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value = "both")]
        strategy: commands::StrategyArg,
    },
    /// H^{n+,n-}(0) and the unit volume, with the -(q-1) identity check.
    HZero {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1")]
        nplus: String,
        #[arg(long, default_value = "1")]
        nminus: String,
    },
    /// Split frak_n = n+ n- and frak_d = d+ d- by quadratic residuosity.
    SplitLevel {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        frakd: String,
        #[arg(long)]
        frakn: String,
    },
    /// Coefficient table of the mass theta series.
    ThetaO {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1")]
        nplus: String,
        #[arg(long)]
        nminus: String,
        #[arg(long)]
        max_deg: usize,
    },
    /// Coefficient table of the intersection theta series.
    ThetaLambda {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        frakd: String,
        #[arg(long)]
        frakn: String,
        #[arg(long)]
        max_deg: usize,
    },
    /// Local optimal-embedding number e(O(ℓ), R).
    EmbedLocal {
        /// split, unramified (inert) or ramified.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        level: u32,
        /// division-maximal, matrix-maximal or matrix-hereditary.
        #[arg(long)]
        quat: String,
        /// Also count orbits by brute force over F_3[[t]] (matrix orders).
        #[arg(long)]
        oracle: bool,
    },
    /// Run the oracle-backed acceptance suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut global = cli.global.clone();
    if let Ok(raw) = std::env::var("FFCN_SEED") {
        match raw.trim().parse() {
            Ok(seed) => global.seed = seed,
            Err(_) => return fail(2, &format!("FFCN_SEED={raw:?} is not an unsigned integer")),
        }
    }
    if let Some(n) = global.threads {
        if n == 0 {
            return fail(2, "--threads must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(2, &format!("cannot start thread pool: {e}"));
        }
    }
    match commands::run(&cli.command, &global) {
        Ok(outcome) => {
            if let Err(e) = emit(&global, &outcome.text) {
                return fail(2, &e);
            }
            if let Some(message) = outcome.failure {
                eprintln!("verification failed: {message}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(message) => fail(2, &message),
    }
}

fn emit(global: &GlobalOpts, text: &str) -> Result<(), String> {
    match &global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}
