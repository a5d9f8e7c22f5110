use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tightcl::cli::{self, CliError, Command, ErrorCode};

#[derive(Parser)]
#[command(name = "tc", version, about = "Tight closure over cones of smooth plane cubics")]
struct Args {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide membership of the candidate in the tight closure.
    Check {
        file: PathBuf,
        /// Largest Frobenius exponent tried on supersingular curves.
        #[arg(long = "emax", value_name = "N")]
        e_max: Option<u32>,
    },
    /// Compute generators of the tight closure of the ideal.
    Closure { file: PathBuf },
    /// Split the syzygy bundle of a given twist.
    Decompose {
        file: PathBuf,
        /// Twist; defaults to the candidate degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Smoothness and Hasse invariant of the curve.
    Info { file: PathBuf },
}

fn execute(args: &Args) -> Result<cli::Document, CliError> {
    let (file, cmd) = match &args.cmd {
        Cmd::Check { file, e_max } => (file, Command::Check { e_max: *e_max }),
        Cmd::Closure { file } => (file, Command::Closure),
        Cmd::Decompose { file, degree } => (file, Command::Decompose { degree: *degree }),
        Cmd::Info { file } => (file, Command::Info),
    };
    let text = std::fs::read_to_string(file).map_err(|e| CliError {
        code: ErrorCode::Syntax,
        line: None,
        message: format!("{}: {e}", file.display()),
    })?;
    let problem = cli::parse_problem(&text)?;
    cli::run(cmd, &problem)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    match execute(&args) {
        Ok(doc) => {
            if args.json {
                print!("{}", cli::render_json(&doc));
            } else {
                print!("{}", cli::render_text(&doc));
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            if args.json {
                print!("{}", cli::render_error_json(&e));
            } else {
                eprintln!("{e}");
            }
            ExitCode::from(e.code.exit_code() as u8)
        }
    }
}
