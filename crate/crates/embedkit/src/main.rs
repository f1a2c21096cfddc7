//! `embedkit`: generate, verify, and search self-dual graph embeddings and
//! extract their CSS codes.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 budget or weight cap exhausted, 4 prediction-only family.
//! `EMBEDKIT_THREADS` bounds the worker count for search and distance
//! enumeration (default 1).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use embedkit::run::{
    cmd_code, cmd_distance, cmd_generate, cmd_params, cmd_search, cmd_verify, CmdOutput,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(
    name = "embedkit",
    version,
    about = "Self-dual graph embeddings on orientable surfaces and their CSS codes"
)]
struct Cli {
    /// Report format: line-oriented text or one JSON object.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the rotation system of a code family and check its code.
    ///
    /// Family specs: class1:r=<int>, class2:s=<int>, class3:r=<int>,s=<int>,
    /// class4:r=<int>,s=<int>. class3 with r=s=4 runs the exhaustive
    /// bipartite search; other class3/class4 specs report predicted
    /// parameters only (exit 4).
    Generate {
        spec: String,
        /// Write the rotation system to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on rotation systems examined by the bipartite search.
        #[arg(long)]
        budget: Option<u64>,
        /// Weight cap for distance certification.
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Trace a rotation-system file and run the embedding and code checks.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Write the check matrices of a map to <prefix>.hx, .hz, and .css.
    Code {
        file: PathBuf,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify the minimum distance of a check-matrix pair.
    Distance {
        hx: PathBuf,
        hz: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Evaluate a family parameter formula; prints "n k d family".
    Params { spec: String },
    /// Exhaustively search K_{r,s} for a self-dual embedding.
    Search {
        r: usize,
        s: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the found rotation system to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
}

fn worker_threads() -> usize {
    std::env::var("EMBEDKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn emit(output: CmdOutput, format: OutputFormat) -> ExitCode {
    let rendered = match format {
        OutputFormat::Text => output.report.render_text(),
        OutputFormat::Machine => output.report.render_machine(),
    };
    print!("{rendered}");
    ExitCode::from(output.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = worker_threads();
    let result = match &cli.command {
        Command::Generate {
            spec,
            out,
            budget,
            cap,
        } => cmd_generate(spec, out.as_deref(), *budget, *cap, threads),
        Command::Verify { file, cap } => cmd_verify(file, *cap, threads),
        Command::Code { file, out } => cmd_code(file, out),
        Command::Distance { hx, hz, cap } => cmd_distance(hx, hz, *cap, threads),
        Command::Params { spec } => match cmd_params(spec) {
            Ok(row) => {
                println!("{row}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        Command::Search {
            r,
            s,
            budget,
            out,
            cap,
        } => cmd_search(*r, *s, *budget, out.as_deref(), *cap, threads),
    };
    match result {
        Ok(output) => emit(output, cli.format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
