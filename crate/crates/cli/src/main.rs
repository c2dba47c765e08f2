use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jgk_core::pipeline::ModelId;

mod commands;
mod report;

/// Build, grade and certify the exceptional Jordan gradings.
#[derive(Parser)]
#[command(name = "jgk", version)]
struct Cli {
    /// Directory for algebra, grading and certificate files.
    #[arg(long, global = true, env = "JGK_OUT", default_value = "out")]
    out: PathBuf,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the structure constants and write <model>.algebra.json and <model>.degrees.json.
    Build {
        #[arg(value_parser = parse_model)]
        model: ModelId,
        /// Solve the corrupted E8 skeleton instead (expected to fail).
        #[arg(long)]
        corrupted: bool,
    },
    /// Construct the grading automorphisms and write <model>.grading.json and <model>.autos.json.
    Grade {
        #[arg(value_parser = parse_model)]
        model: ModelId,
        /// Leave out the normalization of σ₂ (negative control).
        #[arg(long)]
        skip_normalization: bool,
    },
    /// Certify the written files and write <model>.cert.json.
    Verify {
        #[arg(value_parser = parse_model)]
        model: ModelId,
        #[command(flatten)]
        opts: VerifyArgs,
    },
    /// Summary table of the certificates in the output directory.
    Report,
    /// Bundle every file of a model into one JSON document.
    Export {
        #[arg(value_parser = parse_model)]
        model: ModelId,
        /// Destination (default: <out>/<model>.bundle.json).
        #[arg(long)]
        to: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Sweep every Jacobi triple regardless of dimension.
    #[arg(long, conflicts_with = "sample")]
    full_jacobi: bool,
    /// Number of sampled Jacobi triples (forces sampling).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time in the certificate (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse().map_err(|e: jgk_core::pipeline::PipelineError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("jgk: {e}");
            return ExitCode::from(2);
        }
    }
    let out = cli.out;
    let result = match cli.command {
        Command::Build { model, corrupted } => commands::build(&out, model, corrupted),
        Command::Grade { model, skip_normalization } => commands::grade(&out, model, skip_normalization),
        Command::Verify { model, opts } => {
            commands::verify(&out, model, opts.full_jacobi, opts.sample, opts.seed, opts.timing)
        }
        Command::Report => report::run(&out),
        Command::Export { model, to } => commands::export(&out, model, to),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jgk: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
