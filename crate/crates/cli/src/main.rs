use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genfrob_core::job::{self, Command, Format, JobSpec, EXIT_INVALID};
use genfrob_core::{LatticeBasis, WeightVector};

/// Generalised Frobenius numbers and lattice modules.
#[derive(Parser, Debug)]
#[command(name = "genfrob", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print a basis of the lattice.
    Basis(Args),
    /// Print a minimal Markov basis of the lattice ideal.
    Ideal(Args),
    /// List lattice points within distance k of the origin.
    Ball(Args),
    /// Minimal generators of M^(k) with supports and classification.
    Module(Args),
    /// Structure poset and the module poset of M^(k).
    Poset(Args),
    /// The k-th Frobenius number F_k.
    Frobenius(Args),
    /// F_k, m_k and b_k for k = 1..k-max with bound checks.
    Sequence(Args),
    /// Compare F_k from the module pipeline against brute force.
    Verify(Args),
}

#[derive(clap::Args, Debug)]
struct Args {
    /// Weights, comma separated, e.g. 3,5,8.
    #[arg(short = 'a', long = "weights", allow_hyphen_values = true)]
    weights: Option<String>,
    /// Sublattice basis file: one whitespace-separated vector per line.
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(short = 'k', default_value_t = 1)]
    k: usize,
    #[arg(long = "k-max", default_value_t = 6)]
    k_max: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutputFormat {
    Text,
    Json,
    Dot,
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Basis(a) => (Command::Basis, a),
        Cmd::Ideal(a) => (Command::Ideal, a),
        Cmd::Ball(a) => (Command::Ball, a),
        Cmd::Module(a) => (Command::Module, a),
        Cmd::Poset(a) => (Command::Poset, a),
        Cmd::Frobenius(a) => (Command::Frobenius, a),
        Cmd::Sequence(a) => (Command::Sequence, a),
        Cmd::Verify(a) => (Command::Verify, a),
    };
    let spec = match build_spec(command, &args) {
        Ok(s) => s,
        Err(e) => return fail(e.code, e),
    };
    if args.threads > 1 {
        if let Err(e) = genfrob_core::configure_threads(args.threads) {
            return fail(EXIT_INVALID, e);
        }
    }
    match job::run(&spec) {
        Ok(out) => match &args.output {
            Some(path) => match std::fs::write(path, out.text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(1, format!("{}: {e}", path.display())),
            },
            None => {
                print!("{}", out.text);
                ExitCode::SUCCESS
            }
        },
        Err(e) if e.code == job::EXIT_MISMATCH => {
            print!("{}", e.message);
            fail(e.code, "pipeline and oracle disagree")
        }
        Err(e) => fail(e.code, e),
    }
}

fn build_spec(command: Command, args: &Args) -> Result<JobSpec, job::JobError> {
    let basis = match &args.basis {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| job::JobError {
                code: EXIT_INVALID,
                message: format!("{}: {e}", path.display()),
            })?;
            Some(job::parse_basis_text(&text)?)
        }
        None => None,
    };
    let weights: WeightVector = match (&args.weights, &basis) {
        (Some(a), _) => job::parse_weights(a)?,
        (None, Some(vs)) => LatticeBasis::weight_from_vectors(vs)?,
        (None, None) => {
            return Err(job::JobError { code: EXIT_INVALID, message: "give -a or --basis".into() })
        }
    };
    let mut spec = JobSpec::new(weights, command);
    spec.basis = basis;
    spec.k = args.k;
    spec.k_max = args.k_max;
    spec.format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
        OutputFormat::Dot => Format::Dot,
    };
    if let Ok(cap) = std::env::var("GENFROB_DEGREE_CAP") {
        let cap = cap.trim().parse::<i64>().map_err(|_| job::JobError {
            code: EXIT_INVALID,
            message: format!("GENFROB_DEGREE_CAP '{cap}' is not an integer"),
        })?;
        spec.scan.degree_cap = Some(cap);
    }
    Ok(spec)
}
