//! Command-line surface for the pebbling library.
//!
//! Exit codes: 0 success (or verified positive), 1 verified negative,
//! 2 usage or parse error, 3 certificate violation or internal
//! inconsistency, 4 search budget exceeded, 5 oracle disagreement.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use pebtree::error::Error;
use pebtree::{asymptotics, optimal, pebbling, seq, SymmetricConfig};

#[derive(Parser)]
#[command(
    name = "pebtree",
    version,
    about = "Optimal pebbling numbers and configurations of complete binary trees"
)]
struct Cli {
    /// Output format (not every command supports every format)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Bfile,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Re-rooted tree dynamic programming
    Dp,
    /// Exhaustive search over all move sequences (small trees only)
    Exhaustive,
    /// The necessary condition 3n(f) − c(f) >= 2^(h+1)
    Liquid,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeqName {
    A,
    S,
    C,
    D,
    T,
    W,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal pebbling number and configuration of the height-h tree
    Pistar { h: u32 },
    /// Emit the configuration f_{h,k} as a JSON document (k defaults to k(h))
    Config {
        h: u32,
        #[arg(long)]
        k: Option<u128>,
    },
    /// Check whether a configuration document pebbles its tree
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        /// State budget for the exhaustive method
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Print a sequence prefix (a and s start at index 0; c, d, t, w at 1)
    Seq { name: SeqName, n: u128 },
    /// Expansion table: k(h), phi(2^h), remainder, and alpha(h)
    Asymptotics { hmax: u32 },
    /// Lower-bound certificate for the height-h tree
    Certificate { h: u32 },
    /// Brute-force search versus the closed formula
    Crosscheck {
        hmax: u32,
        /// Total configuration budget across all heights
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Overflow(_) | Error::Parse(_) => 2,
        Error::CertificateViolation { .. } | Error::Inconsistency(_) => 3,
        Error::BudgetExceeded(_) => 4,
    }
}

fn unsupported_format() -> Error {
    Error::InvalidArgument("unsupported output format for this command".into())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Pistar { h } => cmd_pistar(h, cli.format),
        Command::Config { h, k } => cmd_config(h, k, cli.format),
        Command::Verify {
            path,
            method,
            budget,
        } => cmd_verify(&path, method, budget, cli.format),
        Command::Seq { name, n } => cmd_seq(name, n, cli.format),
        Command::Asymptotics { hmax } => cmd_asymptotics(hmax, cli.format),
        Command::Certificate { h } => cmd_certificate(h, cli.format),
        Command::Crosscheck { hmax, budget } => cmd_crosscheck(hmax, budget, cli.format),
    }
}

/// Joins u128 values as a bare JSON array body.
fn join_values<'a>(values: impl Iterator<Item = &'a u128>) -> String {
    let mut out = String::new();
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v}");
    }
    out
}

fn fmt_alpha(alpha: f64) -> String {
    format!("{alpha:.15}")
}

fn cmd_pistar(h: u32, format: Format) -> Result<i32, Error> {
    let result = optimal::optimize(h)?;
    match format {
        Format::Text => {
            println!(
                "h={} k={} pi*={} config={}",
                result.h, result.k, result.pi_star, result.config
            );
        }
        Format::Json => {
            println!(
                "{{\"h\":{},\"k\":{},\"piStar\":{},\"config\":[{}]}}",
                result.h,
                result.k,
                result.pi_star,
                join_values(result.config.levels().iter())
            );
        }
        _ => return Err(unsupported_format()),
    }
    Ok(0)
}

fn cmd_config(h: u32, k: Option<u128>, format: Format) -> Result<i32, Error> {
    let k = match k {
        Some(k) => k,
        None => optimal::k_of_h(h)?,
    };
    let config = optimal::build_config(h, k)?;
    match format {
        Format::Text | Format::Json => println!("{}", config.to_json()),
        _ => return Err(unsupported_format()),
    }
    Ok(0)
}

fn cmd_verify(path: &PathBuf, method: Method, budget: u64, format: Format) -> Result<i32, Error> {
    if format != Format::Text {
        return Err(unsupported_format());
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let config = SymmetricConfig::from_json(&text)?;
    let h = config.height();

    match method {
        Method::Liquid => {
            let report = config.liquid()?;
            println!(
                "pebbles={} column_sum={} weight={} threshold={}",
                report.pebbles, report.column_sum, report.weight, report.threshold
            );
            if report.satisfied {
                println!("necessary condition holds");
                Ok(0)
            } else {
                println!("necessary condition fails");
                Ok(1)
            }
        }
        Method::Dp => {
            let mut failed_level = None;
            for level in 0..=h {
                let deliverable = config.max_deliver(level)?;
                println!("level {level}: deliverable={deliverable}");
                if deliverable == 0 && failed_level.is_none() {
                    failed_level = Some(level);
                }
            }
            report_verdict(failed_level)
        }
        Method::Exhaustive => {
            if h > pebbling::MAX_EXPLICIT_HEIGHT {
                return Err(Error::BudgetExceeded(format!(
                    "exhaustive verification cannot materialize height {h}"
                )));
            }
            let explicit = config.materialize()?;
            let mut failed_level = None;
            for level in 0..=h {
                // Leftmost vertex of the level; symmetry covers the rest.
                let deliverable = explicit.oracle_deliver(1 << level, budget)?;
                println!("level {level}: deliverable={deliverable}");
                if deliverable == 0 && failed_level.is_none() {
                    failed_level = Some(level);
                }
            }
            report_verdict(failed_level)
        }
    }
}

fn report_verdict(failed_level: Option<u32>) -> Result<i32, Error> {
    match failed_level {
        None => {
            println!("verdict: pebbles");
            Ok(0)
        }
        Some(level) => {
            println!("verdict: fails at level {level}");
            Ok(1)
        }
    }
}

fn cmd_seq(name: SeqName, n: u128, format: Format) -> Result<i32, Error> {
    if n > 1_000_000 {
        return Err(Error::InvalidArgument(
            "sequence prefixes are capped at n = 10^6".into(),
        ));
    }
    type SeqFn = fn(u128) -> Result<u128, Error>;
    let (label, offset, eval): (&str, u128, SeqFn) = match name {
        SeqName::A => ("a", 0, seq::a),
        SeqName::S => ("s", 0, seq::s),
        SeqName::C => ("c", 1, seq::conolly_fox),
        SeqName::D => ("d", 1, seq::d),
        SeqName::T => ("t", 1, seq::t),
        SeqName::W => ("w", 1, |k| seq::w(k as u32)),
    };
    let mut values = Vec::new();
    let mut index = offset;
    while index <= n {
        values.push(eval(index)?);
        index += 1;
    }
    match format {
        Format::Text => {
            let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            println!("{}", line.join(" "));
        }
        Format::Csv => {
            println!("n,value");
            for (i, v) in values.iter().enumerate() {
                println!("{},{v}", offset + i as u128);
            }
        }
        Format::Bfile => {
            for (i, v) in values.iter().enumerate() {
                println!("{} {v}", offset + i as u128);
            }
        }
        Format::Json => {
            println!(
                "{{\"name\":\"{label}\",\"offset\":{offset},\"values\":[{}]}}",
                join_values(values.iter())
            );
        }
    }
    Ok(0)
}

fn cmd_asymptotics(hmax: u32, format: Format) -> Result<i32, Error> {
    if !(2..=asymptotics::MAX_TABLE_HEIGHT).contains(&hmax) {
        return Err(Error::InvalidArgument(format!(
            "asymptotics range is 2..={}; got {hmax}",
            asymptotics::MAX_TABLE_HEIGHT
        )));
    }
    let rows = asymptotics::table(hmax)?;
    match format {
        Format::Csv => {
            println!("h,k,phi,r,alpha,exception");
            for row in &rows {
                println!(
                    "{},{},{},{},{},{}",
                    row.h,
                    row.k,
                    row.phi,
                    row.remainder,
                    fmt_alpha(row.alpha),
                    row.exception
                );
            }
        }
        Format::Text => {
            for row in &rows {
                println!(
                    "h={} k={} phi={} r={} alpha={} exception={}",
                    row.h,
                    row.k,
                    row.phi,
                    row.remainder,
                    fmt_alpha(row.alpha),
                    row.exception
                );
            }
        }
        Format::Json => {
            let mut body = String::new();
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    body.push(',');
                }
                let _ = write!(
                    body,
                    "{{\"h\":{},\"k\":{},\"phi\":{},\"r\":{},\"alpha\":{},\"exception\":{}}}",
                    row.h,
                    row.k,
                    row.phi,
                    row.remainder,
                    fmt_alpha(row.alpha),
                    row.exception
                );
            }
            println!("[{body}]");
        }
        Format::Bfile => return Err(unsupported_format()),
    }
    Ok(0)
}

fn cmd_certificate(h: u32, format: Format) -> Result<i32, Error> {
    let cert = optimal::certificate(h)?;
    match format {
        Format::Text => {
            println!(
                "case={} t={} threshold={} slack={}",
                cert.case.label(),
                cert.t_value,
                cert.threshold,
                cert.slack
            );
        }
        Format::Json => {
            println!(
                "{{\"h\":{},\"case\":\"{}\",\"t\":{},\"threshold\":{},\"slack\":{}}}",
                cert.h,
                cert.case.label(),
                cert.t_value,
                cert.threshold,
                cert.slack
            );
        }
        _ => return Err(unsupported_format()),
    }
    Ok(0)
}

fn cmd_crosscheck(hmax: u32, budget: u64, format: Format) -> Result<i32, Error> {
    if !(1..=9).contains(&hmax) {
        return Err(Error::InvalidArgument(format!(
            "crosscheck supports hmax in 1..=9; got {hmax}"
        )));
    }
    if format == Format::Csv {
        println!("h,oracle,formula,agree");
    } else if format != Format::Text {
        return Err(unsupported_format());
    }
    let mut remaining = budget;
    let mut disagreement = false;
    for h in 1..=hmax {
        let oracle = optimal::brute_force_pi_star_with_counter(h, &mut remaining)?;
        let formula = optimal::pi_star(h)?;
        let agree = oracle == formula;
        disagreement |= !agree;
        match format {
            Format::Csv => println!("{h},{oracle},{formula},{agree}"),
            _ => println!(
                "h={h} oracle={oracle} formula={formula} {}",
                if agree { "ok" } else { "MISMATCH" }
            ),
        }
    }
    if disagreement {
        eprintln!("error: oracle disagrees with the closed formula");
        return Ok(5);
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_map() {
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), 2);
        assert_eq!(exit_code(&Error::Overflow("x")), 2);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(
            exit_code(&Error::CertificateViolation {
                h: 3,
                detail: "x".into()
            }),
            3
        );
        assert_eq!(exit_code(&Error::Inconsistency("x".into())), 3);
        assert_eq!(exit_code(&Error::BudgetExceeded("x".into())), 4);
    }
}
