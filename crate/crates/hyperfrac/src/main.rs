//! Command-line surface over the library. Exit codes: 0 success, 1
//! verification failure, 2 invalid input, 3 internal invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperfrac::decomposer::{decompose, point_polynomials, DecomposeError, PivotStrategy};
use hyperfrac::verifier::run_all;
use hyperfrac::{io, is_generic, ArrangementInput};

const SPOT_CHECK_TRIALS: usize = 100;

#[derive(Parser)]
#[command(
    name = "hyperfrac",
    version,
    about = "Exact partial fractions over the points of a hyperplane arrangement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    LastRemovable,
    FirstRemovable,
}

impl From<Strategy> for PivotStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::LastRemovable => PivotStrategy::LastRemovable,
            Strategy::FirstRemovable => PivotStrategy::FirstRemovable,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the points of the arrangement with their incident form indices
    Points {
        /// Arrangement input JSON file
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also list every spanning subset of each point's incident set
        #[arg(long)]
        subsets: bool,
        /// Cap on incident-set size for spanning-subset enumeration
        #[arg(long, default_value_t = hyperfrac::DEFAULT_SUBSET_CAP)]
        max_xp: usize,
    },
    /// Decompose the product of reciprocals into partial fractions
    Decompose {
        /// Arrangement input JSON file
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::LastRemovable)]
        strategy: Strategy,
        /// Run all verification oracles and report alongside the output
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for the randomized spot check
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-verify a serialized decomposition against its input
    Verify {
        /// Decomposition JSON file (output of `decompose --format json`)
        decomposition: PathBuf,
        /// Arrangement input JSON file the decomposition belongs to
        input: PathBuf,
        /// Seed for the randomized spot check
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report whether the parameters are generic
    Generic {
        /// Arrangement input JSON file
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn load_input(path: &Path) -> Result<ArrangementInput, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    io::parse_input(&text)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Points {
            input,
            format,
            subsets,
            max_xp,
        } => {
            let input = match load_input(&input) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e),
            };
            let cap = subsets.then_some(max_xp);
            let entries = match io::point_entries(&input, cap) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e.to_string()),
            };
            match format {
                Format::Text => println!("{}", io::render_points_text(&entries)),
                Format::Json => println!("{}", io::points_json(&entries)),
            }
            ExitCode::SUCCESS
        }
        Command::Decompose {
            input,
            strategy,
            verify,
            format,
            seed,
        } => {
            let input = match load_input(&input) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e),
            };
            let d = match decompose(&input, strategy.into()) {
                Ok(d) => d,
                Err(DecomposeError::Arrangement(e)) => {
                    return fail(EXIT_INVALID_INPUT, &e.to_string())
                }
                Err(e) => return fail(EXIT_INTERNAL, &e.to_string()),
            };
            let report = if verify {
                match run_all(&d, SPOT_CHECK_TRIALS, seed) {
                    Ok(r) => Some(r),
                    Err(e) => return fail(EXIT_INTERNAL, &e.to_string()),
                }
            } else {
                None
            };
            match (format, &report) {
                (Format::Text, _) => {
                    let cps = point_polynomials(&d);
                    println!("{}", io::render_decomposition_text(&d, &cps));
                    if let Some(r) = &report {
                        println!("{}", io::render_report_text(r));
                    }
                }
                (Format::Json, None) => println!("{}", io::decomposition_json(&d)),
                (Format::Json, Some(r)) => {
                    println!("{}", io::decomposition_with_report_json(&d, r))
                }
            }
            match report {
                Some(r) if !r.all_pass() => ExitCode::from(EXIT_VERIFICATION_FAILED),
                _ => ExitCode::SUCCESS,
            }
        }
        Command::Verify {
            decomposition,
            input,
            seed,
        } => {
            let input = match load_input(&input) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e),
            };
            let text = match std::fs::read_to_string(&decomposition) {
                Ok(t) => t,
                Err(e) => {
                    return fail(
                        EXIT_INVALID_INPUT,
                        &format!("cannot read {}: {e}", decomposition.display()),
                    )
                }
            };
            let d = match io::parse_decomposition(&text, input) {
                Ok(d) => d,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e),
            };
            let report = match run_all(&d, SPOT_CHECK_TRIALS, seed) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_INTERNAL, &e.to_string()),
            };
            println!("{}", io::report_json(&report));
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION_FAILED)
            }
        }
        Command::Generic { input, format } => {
            let input = match load_input(&input) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID_INPUT, &e),
            };
            let report = is_generic(&input);
            match format {
                Format::Text => println!("{}", io::render_genericity_text(&report)),
                Format::Json => println!("{}", io::genericity_json(&report)),
            }
            ExitCode::SUCCESS
        }
    }
}
