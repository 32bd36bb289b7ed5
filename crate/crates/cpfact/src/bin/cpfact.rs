//! Command-line frontend.
//!
//! Machine-readable artifacts go to stdout or files; diagnostics and
//! human-readable summaries go to stderr. `-` means stdin/stdout, so
//! runs compose with shell pipelines. Exit codes: 0 success, 2 bound
//! exceeded, 3 input suspected outside the interior, 64 malformed input
//! file, 1 anything else.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cpfact::error::Error;
use cpfact::factorize::{factorize, FactorizeConfig, FactorizeOutcome};
use cpfact::instances::generate_interior;
use cpfact::io::{parse_certificate, parse_matrix, serialize_certificate, serialize_matrix};
use cpfact::lattice::{dirichlet, find_violations, SeparationConfig};
use cpfact::verify::{verify_certificate, Verdict};
use cpfact::Rational;

const EXIT_BOUND_EXCEEDED: u8 = 2;
const EXIT_NOT_INTERIOR: u8 = 3;
const EXIT_PARSE: u8 = 64;

#[derive(Parser)]
#[command(name = "cpfact", about = "Exact rational cp-factorization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a rational cp-factorization certificate for a matrix.
    Factorize {
        /// Matrix file (`-` for stdin).
        matrix: Option<PathBuf>,
        /// Largest sup-norm bound for separation vectors.
        #[arg(long = "max-R", default_value_t = 8)]
        max_r: u64,
        /// Sup-norm bound for the initial constraint set.
        #[arg(long = "initial-R", default_value_t = 2)]
        initial_r: u64,
        /// Multiplier applied to trace(A) when choosing lambda.
        #[arg(long = "lambda-mult", default_value = "1")]
        lambda_mult: Rational,
        /// Cap on cutting-plane rounds.
        #[arg(long, default_value_t = 1000)]
        max_rounds: usize,
        /// Certificate output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate file against a matrix file.
    Verify {
        matrix: PathBuf,
        certificate: PathBuf,
    },
    /// Generate a certified interior instance.
    Generate {
        #[arg(short = 'n', long = "dim")]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        coeff_bound: u64,
        #[arg(long, default_value_t = 3)]
        coord_bound: u64,
        /// Matrix output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the generating witness certificate.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print lattice vectors violating `<B, vv^T> >= 1`, one per line.
    Separate {
        /// File holding the matrix B (`-` for stdin).
        matrix: Option<PathBuf>,
        #[arg(long = "R", default_value_t = 4)]
        linf_bound: u64,
        #[arg(long, default_value_t = 1000)]
        max_violations: usize,
    },
    /// Simultaneous Dirichlet approximation of rational numbers.
    Dirichlet {
        /// Comma-separated rational targets, e.g. `1/3,2/3`.
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<Rational>,
        #[arg(long)]
        eps: Rational,
    },
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::write(p, content),
        _ => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Parse { .. } => ExitCode::from(EXIT_PARSE),
        _ => ExitCode::FAILURE,
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Factorize {
            matrix,
            max_r,
            initial_r,
            lambda_mult,
            max_rounds,
            output,
        } => {
            let text = match read_input(&matrix) {
                Ok(t) => t,
                Err(e) => return fail(&e.into()),
            };
            let a = match parse_matrix(&text) {
                Ok(a) => a,
                Err(e) => return fail(&e),
            };
            let cfg = FactorizeConfig {
                initial_linf_bound: initial_r.min(max_r),
                max_linf_bound: max_r,
                lambda_multiplier: lambda_mult,
                max_rounds,
            };
            match factorize(&a, &cfg) {
                Ok(FactorizeOutcome::Success(cert)) => {
                    eprintln!(
                        "success: {} atoms, lambda = {}, R = {}, rounds = {}, pivots = {}",
                        cert.atoms.len(),
                        cert.meta.lambda,
                        cert.meta.final_linf_bound,
                        cert.meta.separation_rounds,
                        cert.meta.lp_pivots
                    );
                    match write_output(&output, &serialize_certificate(&cert)) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(e) => fail(&e.into()),
                    }
                }
                Ok(FactorizeOutcome::BoundExceeded {
                    final_linf_bound, ..
                }) => {
                    eprintln!("bound exceeded: no certificate within R = {final_linf_bound}");
                    ExitCode::from(EXIT_BOUND_EXCEEDED)
                }
                Ok(FactorizeOutcome::NotInteriorSuspected { .. }) => {
                    eprintln!(
                        "not interior: found a direction orthogonal-or-negative against the \
                         input; the matrix is likely outside the interior of the cone"
                    );
                    ExitCode::from(EXIT_NOT_INTERIOR)
                }
                Err(e) => fail(&e),
            }
        }
        Command::Verify {
            matrix,
            certificate,
        } => {
            let a = match std::fs::read_to_string(&matrix)
                .map_err(Error::from)
                .and_then(|t| parse_matrix(&t))
            {
                Ok(a) => a,
                Err(e) => return fail(&e),
            };
            let cert = match std::fs::read_to_string(&certificate)
                .map_err(Error::from)
                .and_then(|t| parse_certificate(&t))
            {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            match verify_certificate(&a, &cert) {
                Verdict::Valid => {
                    eprintln!("valid");
                    ExitCode::SUCCESS
                }
                Verdict::Invalid(reason) => {
                    eprintln!("invalid: {reason}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Generate {
            dim,
            seed,
            coeff_bound,
            coord_bound,
            output,
            witness,
        } => {
            let inst = match generate_interior(dim, seed, coeff_bound, coord_bound) {
                Ok(i) => i,
                Err(e) => return fail(&e),
            };
            if let Err(e) = write_output(&output, &serialize_matrix(&inst.matrix)) {
                return fail(&e.into());
            }
            if let Some(path) = witness {
                if let Err(e) =
                    std::fs::write(&path, serialize_certificate(&inst.witness))
                {
                    return fail(&e.into());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Separate {
            matrix,
            linf_bound,
            max_violations,
        } => {
            let text = match read_input(&matrix) {
                Ok(t) => t,
                Err(e) => return fail(&e.into()),
            };
            let b = match parse_matrix(&text) {
                Ok(b) => b,
                Err(e) => return fail(&e),
            };
            let cfg = match SeparationConfig::new(linf_bound, max_violations) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            for v in find_violations(&b, &cfg) {
                let coords: Vec<String> =
                    v.coords().iter().map(|c| c.to_string()).collect();
                println!("{}", coords.join(" "));
            }
            ExitCode::SUCCESS
        }
        Command::Dirichlet { alphas, eps } => match dirichlet(&alphas, &eps) {
            Ok(res) => {
                println!("q {}", res.q);
                let nums: Vec<String> = res.p.iter().map(|p| p.to_string()).collect();
                println!("p {}", nums.join(" "));
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
    }
}

fn main() -> ExitCode {
    // Worker-thread cap for the separation oracle.
    if let Ok(threads) = std::env::var("CPFACT_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    run(Cli::parse())
}
