use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sorpfix_cli::{Exit, Fixpoint, JobSpec, Method, OutputFormat};

/// Least and greatest solutions of polynomial equation systems over
/// absorptive semirings.
#[derive(Parser, Debug)]
#[command(name = "sorpfix", version)]
struct Args {
    /// JSON document describing the system
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    fixpoint: Fixpoint,
    #[arg(long, value_enum)]
    method: Method,
    /// Iteration bound, required by and only accepted with `--method kleene`
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    output: OutputFormat,
    /// Cross-check the solution against a brute-force or derivation-tree oracle
    #[arg(long)]
    verify: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = JobSpec {
        input: args.input,
        fixpoint: args.fixpoint,
        method: args.method,
        max_steps: args.max_steps,
        output: args.output,
        verify: args.verify,
    };
    match spec.run() {
        Ok(doc) => {
            println!("{}", doc.render(spec.output));
            ExitCode::from(doc.exit() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Exit::Invalid as u8)
        }
    }
}
