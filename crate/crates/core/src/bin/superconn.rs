use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use superconn::cli::{input_error, run_text, Command, Flags};
use superconn::io::serialize_instance;

/// Exact verification of flat ∂̄-superconnections, Chern forms and
/// Bott-Chern witnesses from JSON instance files.
#[derive(Parser)]
#[command(name = "superconn", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance file (JSON).
    instance: PathBuf,
    /// Largest Chern form degree.
    #[arg(long)]
    max_k: Option<u32>,
    /// Coefficient degree bound for linear solves.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Write the produced instance (normalize, complete, twist) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let flags = Flags { max_k: args.max_k, degree_bound: args.degree_bound, seed: args.seed, timing: args.timing };
    let outcome = match std::fs::read_to_string(&args.instance) {
        Ok(text) => run_text(args.command, &text, &flags),
        Err(e) => input_error(
            args.command,
            &flags,
            &superconn::Error::Parse { location: args.instance.display().to_string(), message: e.to_string() },
        ),
    };
    if args.text {
        print!("{}", outcome.report.to_text());
    } else {
        print!("{}", outcome.report.to_json());
    }
    if let (Some(path), Some(inst)) = (&args.out, &outcome.output) {
        if let Err(e) = std::fs::write(path, serialize_instance(inst)) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
