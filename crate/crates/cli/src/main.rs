//! `geomin`: minimizers of `f_m(x) = 1 + x + ... + x^m` from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geomin_core::{Error, EvenDegree, Method};

use output::{emit, Format, OutputError};

#[derive(Parser)]
#[command(
    version,
    about = "Minimizers of the even-degree geometric-sum polynomial"
)]
struct Cli {
    /// Working precision in mantissa bits
    #[arg(long, global = true, env = "GEOMIN_PREC", default_value_t = 256)]
    prec: u32,

    /// Output file (standard output when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output file format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one minimizer by the chosen method
    Minimize {
        #[arg(long, value_parser = parse_degree)]
        m: EvenDegree,
        #[arg(long, default_value = "oracle", value_parser = parse_method)]
        method: Method,
        /// Truncation order for the series methods
        #[arg(long)]
        terms: Option<usize>,
        /// Decimal places printed for x_m and f_min
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Minimizers and minimum values for m = 2, 4, ..., m_max
    Table {
        #[arg(long, value_parser = parse_degree)]
        m_max: EvenDegree,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Relative error of the perturbation partial sums
    Convergence {
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_degree)]
        m: Vec<EvenDegree>,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        /// Add a column for the Lagrange-inversion partial sums
        #[arg(long)]
        lagrange: bool,
    },
    /// Digits achieved with the truncation order n*(q), for m = 4, ..., m_max
    Sigdigits {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        #[arg(long, value_parser = parse_degree)]
        m_max: EvenDegree,
    },
}

fn parse_degree(s: &str) -> Result<EvenDegree, String> {
    let m: i64 = s.parse().map_err(|e| format!("{e}"))?;
    EvenDegree::try_from(m).map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

enum Failure {
    Compute(Error),
    Output(OutputError),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<OutputError> for Failure {
    fn from(e: OutputError) -> Self {
        Failure::Output(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Compute(
                Error::NonConvergence { .. } | Error::Precision(_) | Error::Overflow(_),
            ) => 3,
            Failure::Compute(_) => 2,
            Failure::Output(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Compute(e) => e.fmt(f),
            Failure::Output(e) => e.fmt(f),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let bits = cli.prec;
    let table = match cli.command {
        Command::Minimize {
            m,
            method,
            terms,
            digits,
        } => {
            let result = commands::minimize(m, method, terms, bits)?;
            let mut text = String::new();
            for (key, value) in commands::describe(&result, digits) {
                text.push_str(&format!("{key}: {value}\n"));
            }
            return write_text(&text, cli.out.as_deref());
        }
        Command::Table { m_max, digits } => commands::table(m_max, digits, bits)?,
        Command::Convergence { m, n_max, lagrange } => {
            commands::convergence(&m, n_max, lagrange, bits)?
        }
        Command::Sigdigits { q, m_max } => commands::sigdigits(q, m_max, bits)?,
    };
    emit(&table, cli.format, cli.out.as_deref())?;
    Ok(())
}

fn write_text(text: &str, path: Option<&std::path::Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| {
            Failure::Output(OutputError {
                path: Some(p.to_path_buf()),
                source,
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("geomin: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let io = || OutputError {
            path: None,
            source: std::io::Error::other("closed"),
        };
        assert_eq!(Failure::Output(io()).exit_code(), 4);
        assert_eq!(
            Failure::Compute(Error::Precision("floor".into())).exit_code(),
            3
        );
        assert_eq!(
            Failure::Compute(Error::Overflow("term".into())).exit_code(),
            3
        );
        let stuck = Error::NonConvergence {
            what: "pFq",
            iterations: 10,
        };
        assert_eq!(Failure::Compute(stuck).exit_code(), 3);
        assert_eq!(Failure::Compute(Error::UnsupportedDegree(6)).exit_code(), 2);
        assert_eq!(
            Failure::Compute(Error::InvalidContext("bits".into())).exit_code(),
            2
        );
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
