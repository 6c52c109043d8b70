use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use contfrac::approx::{check_best_approximation, check_half_q_squared, check_legendre, ApproxReport};
use contfrac::cf::{alt_representation, convergents, rational_cf};
use contfrac::observations::verify_rules;
use contfrac::scan::{run_scan, Predicate, ScanConfig};
use contfrac::sqrtn::sqrt_cf;
use contfrac::{BigInt, QuadraticSurd, Rational};
use serde_json::json;

/// Exact continued fractions of rationals and quadratic irrationals.
#[derive(Parser)]
#[command(name = "contfrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the periodic expansion of √N as JSON.
    Expand { radicand: BigInt },
    /// Print the expansion of (P + √D)/Q as JSON.
    ExpandSurd {
        #[arg(long, allow_hyphen_values = true)]
        p: BigInt,
        #[arg(long)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        q: BigInt,
    },
    /// Print the finite expansion and convergents of num/den as JSON.
    Rational {
        #[arg(allow_hyphen_values = true)]
        num: BigInt,
        #[arg(allow_hyphen_values = true)]
        den: BigInt,
    },
    /// Scan √N over a range and test period predicates, writing JSON lines.
    Scan {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Comma-separated predicate names; all of them by default.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Predicate>>,
        /// Fail on conjecture counterexamples too, not only on theorem failures.
        #[arg(long)]
        strict: bool,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// JSON-lines report path. Without it the report goes to stdout and the summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Periods up to this length are written out digit by digit.
        #[arg(long, default_value_t = 64)]
        digits_threshold: usize,
    },
    /// Check every period rule in the catalogue for all n <= n-max.
    VerifyObservations {
        #[arg(long)]
        n_max: u64,
        /// Print the full report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Check the approximation theorems for a target such as `sqrt7`.
    ApproxCheck {
        #[arg(long)]
        target: String,
        /// Largest denominator for the Legendre check.
        #[arg(long)]
        qmax: u64,
        /// Highest convergent index for the best-approximation and 1/(2q²) checks.
        #[arg(long, default_value_t = 10)]
        upto: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs one command; `Ok(false)` means it finished but found something to report.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Expand { radicand } => {
            print_json(&sqrt_cf(&radicand)?)?;
        }
        Command::ExpandSurd { p, d, q } => {
            let alpha = QuadraticSurd::new(p, d, q)?;
            let cf = alpha.expand()?;
            print_json(&json!({
                "surd": alpha,
                "preperiod": cf.preperiod.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "period": cf.period.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "purely_periodic": cf.is_purely_periodic(),
                "display": cf.to_string(),
            }))?;
        }
        Command::Rational { num, den } => {
            if den == BigInt::from(0) {
                bail!("denominator must be non-zero");
            }
            let x = Rational::new(num, den);
            let cf = rational_cf(&x);
            let convs = convergents(cf.digits(), cf.len());
            print_json(&json!({
                "value": x.to_string(),
                "digits": cf,
                "alternate": alt_representation(&cf),
                "convergents": convs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }))?;
        }
        Command::Scan {
            min,
            max,
            checks,
            strict,
            jobs,
            out,
            digits_threshold,
        } => {
            let mut cfg = ScanConfig::new(min, max);
            if let Some(checks) = checks {
                cfg.checks = checks;
            }
            cfg.strict = strict;
            cfg.jobs = jobs;
            cfg.digits_threshold = digits_threshold;
            cfg.validate()?;
            let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
            let summary = match &out {
                Some(path) => {
                    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
                    let summary = run_scan(&cfg, &mut BufWriter::new(file), Some(&stamp))?;
                    print!("{summary}");
                    summary
                }
                None => {
                    let summary = run_scan(&cfg, &mut BufWriter::new(io::stdout().lock()), Some(&stamp))?;
                    eprint!("{summary}");
                    summary
                }
            };
            return Ok(summary.success(strict));
        }
        Command::VerifyObservations { n_max, json } => {
            let report = verify_rules(n_max);
            if json {
                print_json(&report)?;
            } else {
                print!("{report}");
            }
            return Ok(report.is_clean());
        }
        Command::ApproxCheck {
            target,
            qmax,
            upto,
            json,
        } => {
            let radicand = parse_target(&target)?;
            let x = QuadraticSurd::sqrt(radicand)?;
            let reports = [
                check_best_approximation(&x, upto)?,
                check_half_q_squared(&x, upto)?,
                check_legendre(&x, qmax)?,
            ];
            if json {
                print_json(&reports)?;
            } else {
                print_approx_table(&x, &reports);
            }
            return Ok(reports.iter().all(ApproxReport::is_clean));
        }
    }
    Ok(true)
}

/// Accepts `sqrt7`, `sqrt(7)` or `√7`.
fn parse_target(target: &str) -> anyhow::Result<BigInt> {
    let inner = target
        .strip_prefix("sqrt")
        .or_else(|| target.strip_prefix('√'))
        .with_context(|| format!("target {target:?} should look like sqrt7"))?;
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner);
    inner
        .parse()
        .with_context(|| format!("target {target:?} should look like sqrt7"))
}

fn print_approx_table(x: &QuadraticSurd, reports: &[ApproxReport]) {
    println!("target {x}");
    println!("{:<20} {:>9} {:>11} {:>6} {:>9}", "check", "checked", "violations", "notes", "ms");
    for r in reports {
        println!(
            "{:<20} {:>9} {:>11} {:>6} {:>9}",
            r.check,
            r.checked,
            r.violations.len(),
            r.notes.len(),
            r.runtime_ms
        );
    }
    for r in reports {
        for note in &r.notes {
            println!("note ({}): {note}", r.check);
        }
        for v in &r.violations {
            println!("VIOLATION ({}): {} at {}", r.check, v.detail, v.subject.fraction);
        }
    }
}
