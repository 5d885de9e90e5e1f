//! `arrlie`: lattice, Orlik–Solomon, fibration and Lie-algebra checks for
//! rational hyperplane arrangements, reported as JSON.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "arrlie", version, about = "Exact certificates for hyperplane arrangements and their holonomy Lie algebras")]
struct Cli {
    /// Indented JSON instead of a single line.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection poset summary and Poincaré polynomial.
    Lattice {
        file: PathBuf,
        /// Dump every flat with its support, codimension and Möbius value.
        #[arg(long)]
        full: bool,
        /// Also substitute t -> t^(2k-1) and check the k-fold codimension scaling.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Brute-force Orlik–Solomon dimensions against the Poincaré polynomial.
    Os {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long = "max-q")]
        max_q: Option<usize>,
    },
    /// Validate a fibered presentation, or search coordinate orders for one.
    Fibration {
        file: PathBuf,
        #[arg(long = "search-permutations")]
        search_permutations: bool,
    },
    /// Graded dimensions of the holonomy Lie algebra, with optional checks.
    Lie {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long = "max-weight", default_value_t = 4)]
        max_weight: usize,
        #[arg(long = "verify-relations")]
        verify_relations: bool,
        /// Compare with the brute-force quotient of the free Lie algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// Enveloping-algebra series against the loop-homology product.
    Series {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 40)]
        truncate: usize,
    },
    /// Emit the Lie (or Poisson) presentation.
    Present {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        poisson: bool,
        #[arg(long)]
        q: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lattice { .. } => "lattice",
            Command::Os { .. } => "os",
            Command::Fibration { .. } => "fibration",
            Command::Lie { .. } => "lie",
            Command::Series { .. } => "series",
            Command::Present { .. } => "present",
        }
    }

    fn run(&self) -> Result<Outcome, Failure> {
        let caps = commands::Caps::from_env()?;
        match self {
            Command::Lattice { file, full, k } => commands::lattice(file, *full, *k),
            Command::Os { file, k, max_q } => commands::os(file, *k, *max_q, &caps),
            Command::Fibration { file, search_permutations } => commands::fibration(file, *search_permutations),
            Command::Lie { file, k, max_weight, verify_relations, oracle } => {
                commands::lie(file, *k, *max_weight, *verify_relations, *oracle, &caps)
            }
            Command::Series { file, k, truncate } => commands::series(file, *k, *truncate),
            Command::Present { file, k, poisson, q } => commands::present(file, *k, *poisson, *q),
        }
    }
}

fn emit(command: &str, status: &str, payload: Value, pretty: bool) {
    let report = json!({ "command": command, "status": status, "payload": payload });
    let text = if pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
    let mut out = std::io::stdout().lock();
    // a closed pipe is the reader's choice, not an error of ours
    let _ = writeln!(out, "{}", text.expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit("arrlie", "error", json!({ "error": e.kind().to_string(), "message": e.to_string().trim_end() }), false);
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    match cli.command.run() {
        Ok(Outcome { ok: true, payload }) => {
            emit(name, "ok", payload, cli.pretty);
            ExitCode::SUCCESS
        }
        Ok(Outcome { ok: false, payload }) => {
            emit(name, "violation", payload, cli.pretty);
            ExitCode::from(1)
        }
        Err(f) => {
            emit(name, "error", f.into_payload(), cli.pretty);
            ExitCode::from(2)
        }
    }
}
