//! `frobenius`: decide and certify equality in the Frobenius rank inequality.
//!
//! Exit codes: 0 equality / valid / solvable, 1 strict inequality / invalid /
//! unsolvable, 2 usage or input error, 3 internal disagreement.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobenius_core::io::{self, Format, Instance};
use frobenius_core::oracle::{random_instance, InstanceSpec, DEFAULT_BUDGET};
use frobenius_core::{brute_force_solvable, solution_family, verify_certificate, Error, FieldSpec};

#[derive(Parser)]
#[command(name = "frobenius", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report ranks, gap, and the equality criteria.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Report plus a certificate (X, Y) or an inequality witness.
    Certify {
        file: PathBuf,
        /// Include every intermediate of the construction.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Check a given X, Y against B = BCX + YAB.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Derive further solution pairs from a verified certificate.
    Family {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(short = 'n', default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Decide solvability by exhaustive search (prime fields only).
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit a seeded random instance.
    Gen {
        #[arg(long)]
        field: String,
        /// Comma-separated m,n,p,q.
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_instance(path: &Path) -> Result<Instance, Error> {
    let bytes = fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_instance(&bytes)
}

fn read_certificate(
    field: FieldSpec,
    path: &Path,
) -> Result<(frobenius_core::Matrix, frobenius_core::Matrix), Error> {
    let bytes = fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_certificate(field, &bytes)
}

fn parse_dims(s: &str) -> Result<(usize, usize, usize, usize), Error> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad dims {s:?}")))?;
    match parts[..] {
        [m, n, p, q] if parts.iter().all(|&d| d >= 1) => Ok((m, n, p, q)),
        _ => Err(Error::Parse(format!(
            "dims must be four positive integers m,n,p,q, got {s:?}"
        ))),
    }
}

fn verdict_code(equality: bool) -> ExitCode {
    ExitCode::from(if equality { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check { file, format } => {
            let inst = read_instance(&file)?;
            let report = io::check_report(&inst)?;
            print!("{}", io::emit_report(&report, format.into()));
            Ok(verdict_code(report.criteria.equality()))
        }
        Command::Certify {
            file,
            trace,
            format,
        } => {
            let inst = read_instance(&file)?;
            let report = io::certify_report(&inst, trace)?;
            print!("{}", io::emit_report(&report, format.into()));
            Ok(verdict_code(report.criteria.equality()))
        }
        Command::Verify { file, cert } => {
            let inst = read_instance(&file)?;
            let (x, y) = read_certificate(inst.field, &cert)?;
            let ok = verify_certificate(&inst.a, &inst.b, &inst.c, &x, &y)?;
            println!("valid={ok}");
            Ok(verdict_code(ok))
        }
        Command::Family {
            file,
            cert,
            count,
            format,
        } => {
            let inst = read_instance(&file)?;
            let (x, y) = read_certificate(inst.field, &cert)?;
            let pairs = solution_family(&inst.a, &inst.b, &inst.c, &x, &y, count)?;
            print!("{}", io::emit_family(&pairs, format.into()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { file, budget } => {
            let inst = read_instance(&file)?;
            let solvable = brute_force_solvable(&inst.a, &inst.b, &inst.c, budget)?;
            println!("solvable={solvable}");
            Ok(verdict_code(solvable))
        }
        Command::Gen { field, dims, seed } => {
            let field: FieldSpec = field.parse()?;
            let dims = parse_dims(&dims)?;
            let (a, b, c) = random_instance(&InstanceSpec::new(field, dims, seed));
            print!("{}", io::emit_instance(&Instance { field, a, b, c }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e @ Error::InternalDisagreement(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
