use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use resitan::cyclotomic::{verify_gi, verify_gi_plus, verify_tan_cross};
use resitan::harness::{all_clear, parse_checks, scan, APolicy, MPolicy, ReportFormat, ScanConfig};
use resitan::numeric::{
    pmd_lemma_identity, pmd_theorem14_numeric, verify_theorem_main_numeric, DEFAULT_REL_TOL,
};
use resitan::quadforms::cornacchia;
use resitan::residues::{residue_set, symbol_sign};
use resitan::{Check, PrimeContext, VerificationRecord};

const THREADS_VAR: &str = "RESITAN_THREADS";

#[derive(Parser)]
#[command(
    name = "resitan",
    version,
    about = "Verify tangent products over power residues modulo primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Jsonl => ReportFormat::Jsonl,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the product identities for one (p, m, a).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        tol: f64,
    },
    /// Sweep a prime range and write a report.
    Scan {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// `all` or a comma-separated list.
        #[arg(long, default_value = "all")]
        m: String,
        /// Number of small multipliers a (p - 1 is always added), or `all`.
        #[arg(long = "a-count", default_value = "5")]
        a_count: String,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Fill elapsed_ms with wall-clock times (reports stop being reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Print R_m(p) and its sum.
    Residues {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
    /// Print the 2m-th power residue symbol (a/p)_{2m} when it is +-1.
    Symbol {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
    /// Solve p = x^2 + d y^2.
    Cornacchia {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
    },
    /// Check the full-period tangent product for odd n at x.
    Pmd {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check the quadratic-residue tangent product for p = 1 (mod 8).
    Pmd14 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        tol: f64,
    },
}

fn prime(p: u64) -> Result<PrimeContext> {
    PrimeContext::new(p).with_context(|| format!("--p {p}"))
}

fn as_record(
    result: resitan::Result<VerificationRecord>,
    (p, m, a, check): (u64, u64, i64, Check),
) -> VerificationRecord {
    result.unwrap_or_else(|e| VerificationRecord::from_error(p, m, a, check, &e))
}

fn print_records(records: &[VerificationRecord]) -> ExitCode {
    for r in records {
        println!("{r}");
    }
    if all_clear(records) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("{THREADS_VAR}={v:?}"))?;
            if n == 0 {
                bail!("{THREADS_VAR} must be at least 1");
            }
            Ok(Some(n))
        }
        _ => Ok(None),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { p, m, a, mode, tol } => {
            let ctx = prime(p)?;
            let mut records = Vec::new();
            if matches!(mode, Mode::Exact | Mode::Both) {
                records.push(as_record(verify_gi(&ctx, m, a), (p, m, a, Check::Gi)));
                records.push(as_record(
                    verify_gi_plus(&ctx, m, a),
                    (p, m, a, Check::GiPlus),
                ));
                records.push(as_record(
                    verify_tan_cross(&ctx, m, a),
                    (p, m, a, Check::ThmMainExact),
                ));
            }
            if matches!(mode, Mode::Numeric | Mode::Both) {
                records.push(as_record(
                    verify_theorem_main_numeric(&ctx, m, a, tol),
                    (p, m, a, Check::ThmMainNumeric),
                ));
            }
            Ok(print_records(&records))
        }
        Command::Scan {
            pmin,
            pmax,
            m,
            a_count,
            checks,
            tol,
            out,
            format,
            timing,
        } => {
            let mut config = ScanConfig::new(pmin, pmax);
            config.m_policy = m.parse::<MPolicy>()?;
            config.a_policy = a_count.parse::<APolicy>()?;
            config.checks = parse_checks(&checks)?;
            config.tolerance = tol;
            config.threads = threads_from_env()?;
            config.timing = timing;
            config.output = Some((out.clone(), format.into()));
            let records = scan(&config)?;
            let failures = records.iter().filter(|r| r.status.is_failure()).count();
            eprintln!(
                "{} records written to {} ({failures} failed or errored)",
                records.len(),
                out.display()
            );
            for r in records.iter().filter(|r| r.status.is_failure()) {
                eprintln!("{r}");
            }
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Residues { p, m } => {
            let set = residue_set(&prime(p)?, m)?;
            let members: Vec<String> = set.iter().map(|k| k.to_string()).collect();
            println!("{}", members.join(" "));
            println!("sum {}", set.sum());
            Ok(ExitCode::SUCCESS)
        }
        Command::Symbol { a, p, m } => match symbol_sign(a, &prime(p)?, m) {
            Ok(s) => {
                println!("{s}");
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                println!("error: {e}");
                Ok(ExitCode::FAILURE)
            }
        },
        Command::Cornacchia { p, d } => {
            match cornacchia(&prime(p)?, d) {
                Some(r) => println!("{} {}", r.x, r.y),
                None => println!("none"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pmd { n, x, tol } => {
            let r = as_record(pmd_lemma_identity(n, x, tol), (n, 1, 0, Check::PmdLemma));
            Ok(print_records(&[r]))
        }
        Command::Pmd14 { p, a, tol } => {
            let r = as_record(
                pmd_theorem14_numeric(&prime(p)?, a, tol),
                (p, 2, a, Check::PmdThm14),
            );
            Ok(print_records(&[r]))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
