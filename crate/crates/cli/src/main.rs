mod cache;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use airyexp_core::numeric::{DEFAULT_PRECISION, MIN_PRECISION};
use clap::{Parser, Subcommand};

use cache::Cache;
use error::CliError;
use report::{render, Format, Report};

const MAX_ORDER: usize = 8;
const MAX_TERMS: usize = 32;

/// Exact coefficients of Airy-type uniform asymptotic expansions.
#[derive(Parser, Debug)]
#[command(name = "airyexp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Working precision in bits for `validate`.
    #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = precision, global = true)]
    precision: usize,

    /// Results are stored here as JSON and reused.
    #[arg(long, env = "AIRYEXP_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient table for f0(t) = 1/(t + c).
    RationalExample {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 5, value_parser = order)]
        order: usize,
    },
    /// Parabolic cylinder coefficients in (eta, xi).
    PcfCoeffs {
        #[arg(long, default_value_t = 4, value_parser = order)]
        order: usize,
    },
    /// Maclaurin series in eta of one coefficient.
    PcfMaclaurin {
        /// `alphaN` or `betaN`.
        #[arg(long, value_parser = coeff)]
        coeff: (bool, usize),
        #[arg(long, default_value_t = 16, value_parser = terms)]
        terms: usize,
    },
    /// Compare the truncated expansion with a quadrature reference.
    Validate {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 3, value_parser = order)]
        order: usize,
    },
    /// Check the integration-by-parts table against residue sums.
    OracleCheck {
        #[arg(long, allow_hyphen_values = true)]
        f0: String,
        #[arg(long, default_value_t = 5, value_parser = order)]
        order: usize,
    },
}

fn bounded(s: &str, lo: usize, hi: usize) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("{s:?} is not a nonnegative integer"))?;
    if v < lo || v > hi {
        return Err(format!("{v} is outside {lo}..={hi}"));
    }
    Ok(v)
}

fn order(s: &str) -> Result<usize, String> {
    bounded(s, 0, MAX_ORDER)
}

fn terms(s: &str) -> Result<usize, String> {
    bounded(s, 1, MAX_TERMS)
}

fn precision(s: &str) -> Result<usize, String> {
    bounded(s, MIN_PRECISION, 1 << 16)
}

fn coeff(s: &str) -> Result<(bool, usize), String> {
    commands::parse_coeff(s, MAX_ORDER)
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RationalExample { .. } => "rational-example",
            Command::PcfCoeffs { .. } => "pcf-coeffs",
            Command::PcfMaclaurin { .. } => "pcf-maclaurin",
            Command::Validate { .. } => "validate",
            Command::OracleCheck { .. } => "oracle-check",
        }
    }

    /// Everything that affects the result, and nothing else.
    fn cache_key(&self, precision: usize) -> String {
        match self {
            Command::RationalExample { c, order } => format!("rational-example c={c} order={order}"),
            Command::PcfCoeffs { order } => format!("pcf-coeffs order={order}"),
            Command::PcfMaclaurin { coeff, terms } => format!("pcf-maclaurin coeff={} terms={terms}", coeff_name(*coeff)),
            Command::Validate { mu, t, order } => format!("validate mu={mu} t={t} order={order} precision={precision}"),
            Command::OracleCheck { f0, order } => format!("oracle-check f0={f0} order={order}"),
        }
    }

    fn compute(&self, precision: usize) -> Result<Report, CliError> {
        match self {
            Command::RationalExample { c, order } => commands::rational_example(c, *order),
            Command::PcfCoeffs { order } => commands::pcf_coeffs(*order),
            Command::PcfMaclaurin { coeff, terms } => {
                commands::pcf_maclaurin(&coeff_name(*coeff), coeff.0, coeff.1, *terms)
            }
            Command::Validate { mu, t, order } => commands::validate(mu, t, *order, precision),
            Command::OracleCheck { f0, order } => commands::oracle_check(f0, *order),
        }
    }
}

fn coeff_name((alpha, n): (bool, usize)) -> String {
    format!("{}{n}", if alpha { "alpha" } else { "beta" })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let name = cli.command.name();
    let key = cli.command.cache_key(cli.precision);
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let cached = match &cache {
        Some(c) => c.load(name, &key)?,
        None => None,
    };
    let report = match cached {
        Some(r) => r,
        None => {
            let r = cli.command.compute(cli.precision)?;
            if let Some(c) = &cache {
                c.store(name, &key, &r)?;
            }
            r
        }
    };
    let out = render(&report, cli.format)?;
    if report.meta.oracle_agrees == Some(false) {
        print!("{out}");
        return Err(CliError::OracleMismatch);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
