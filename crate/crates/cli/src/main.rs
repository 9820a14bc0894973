use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod suites;
mod tables;
mod trace;

/// Largest n enumerated over S_n without `--unsafe-n`.
pub const ENUMERATION_CAP: usize = 9;

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "andrekit", version, about = "(p,q)-Eulerian and André polynomials, computed and cross-checked")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first coefficients of a continued fraction.
    Expand {
        #[arg(long, value_enum)]
        series: Series,
        /// Highest coefficient index.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the gamma, d or E_n tables from enumeration.
    Tables {
        #[arg(long, value_enum)]
        which: tables::Which,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow n above the enumeration cap.
        #[arg(long)]
        unsafe_n: bool,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: suites::Suite,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unsafe_n: bool,
    },
    /// Trace phi(sigma, S) step by step, or its inverse.
    BijTrace {
        #[arg(long, required_unless_present = "inverse")]
        sigma: Option<String>,
        /// Valley letters, comma separated.
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long, requires = "tau")]
        inverse: bool,
        #[arg(long)]
        tau: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    Dn,
    Master,
    Neg1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A failure that ends the process with `code`.
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn usage(message: impl Into<String>) -> Self {
        Exit { code: EXIT_USAGE, message: message.into() }
    }
}

pub fn check_cap(n_max: usize, unsafe_n: bool) -> Result<(), Exit> {
    if n_max <= ENUMERATION_CAP {
        return Ok(());
    }
    if !unsafe_n {
        return Err(Exit {
            code: EXIT_CAP,
            message: format!(
                "n = {n_max} is above the enumeration cap of {ENUMERATION_CAP}; pass --unsafe-n to run it anyway"
            ),
        });
    }
    eprintln!("warning: enumerating S_{n_max}, this may take a long time and a lot of memory");
    Ok(())
}

/// Serializes through `Value`, whose maps keep keys sorted.
pub fn canonical_json(value: &serde_json::Value) -> String {
    serde_json::to_string(value).expect("a Value always serializes")
}

fn expand(series: Series, n: usize, format: Format) -> Result<String, Exit> {
    use andrekit::cfrac::{dn_series, master_series, neg1_series};
    use andrekit::Var;

    let (name, coeffs) = match series {
        Series::Dn => ("dn", dn_series(n)),
        Series::Master => ("master", master_series(n)),
        Series::Neg1 => ("neg1", neg1_series(n)),
    };
    let lines: Vec<String> = coeffs.iter().map(|c| c.display_grouped(Var::T)).collect();
    match format {
        Format::Text => Ok(lines.join("\n")),
        Format::Json => Ok(canonical_json(&serde_json::json!({
            "series": name,
            "coefficients": lines,
        }))),
        Format::Csv => Err(Exit::usage("csv output is only available for tables")),
    }
}

fn configure_threads() -> Result<(), Exit> {
    let Ok(raw) = std::env::var("ANDREKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Exit::usage(format!("ANDREKIT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Exit::usage(format!("cannot start {threads} worker threads: {e}")))
}

fn run(cli: Cli) -> Result<(String, u8), Exit> {
    configure_threads()?;
    match cli.command {
        Command::Expand { series, n, format } => Ok((expand(series, n, format)?, 0)),
        Command::Tables { which, n_max, format, unsafe_n } => {
            check_cap(n_max, unsafe_n)?;
            Ok((tables::render(which, n_max, format), 0))
        }
        Command::Verify { suite, n_max, seed, unsafe_n } => {
            if suite.enumerates() {
                check_cap(n_max, unsafe_n)?;
            }
            let report = suites::run(suite, n_max, seed);
            let code = if report.passed() { 0 } else { EXIT_FAIL };
            Ok((canonical_json(&report.to_json()), code))
        }
        Command::BijTrace { sigma, s, inverse, tau } => {
            let out = if inverse {
                trace::inverse(tau.as_deref().unwrap_or_default())?
            } else {
                trace::forward(sigma.as_deref().unwrap_or_default(), &s)?
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            println!("{out}");
            ExitCode::from(code)
        }
        Err(exit) => {
            eprintln!("error: {}", exit.message);
            ExitCode::from(exit.code)
        }
    }
}
