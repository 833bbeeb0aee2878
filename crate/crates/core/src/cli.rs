//! Command-line front end: `verify`, `tabulate` and `sweep`.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage or domain
//! error. Tables are comma-separated with a header row and ten significant
//! digits.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::measures::{gaussian_density, DeformationParams, DensityKind, RadialDensity};
use crate::verify::{run_checks, CheckStatus, VerificationReport, VerifyOptions, CHECK_NAMES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "musb",
    version,
    about = "Checks and tables for the μ-deformed Segal-Bargmann densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check at one μ and write a JSON report.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Replace every numeric tolerance with this value.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a density or solution pair on a uniform grid.
    Tabulate {
        target: Target,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// MIN MAX STEPS
        #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"], allow_negative_numbers = true,
              default_values_t = [0.1, 4.0, 40.0])]
        r: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the checks for several μ and summarise the worst metrics.
    Sweep {
        /// Comma-separated list, e.g. -0.4,0,0.5
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        mu: Vec<f64>,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What `tabulate` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    DensityEven,
    DensityOdd,
    #[value(name = "pair-K", alias = "pair-k")]
    PairK,
    #[value(name = "pair-I", alias = "pair-i")]
    PairI,
    Gaussian,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match cli.command {
        Command::Verify { mu, lambda, tol, out } => cmd_verify(mu, lambda, tol, out.as_deref()),
        Command::Tabulate {
            target,
            mu,
            lambda,
            r,
            out,
        } => {
            let steps = r[2];
            if steps.fract() != 0.0 || steps < 1.0 || steps > u32::MAX as f64 {
                eprintln!("error: STEPS must be a positive integer, got {steps}");
                return EXIT_USAGE;
            }
            cmd_tabulate(target, mu, lambda, (r[0], r[1], steps as usize), out.as_deref())
        }
        Command::Sweep { mu, lambda, tol, out } => cmd_sweep(&mu, lambda, tol, out.as_deref()),
    }
}

fn usage(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

fn check_tol(tol: Option<f64>) -> Result<()> {
    match tol {
        Some(t) if !(t >= 0.0 && t.is_finite()) => {
            Err(Error::Domain(format!("--tol must be a finite number >= 0, got {t}")))
        }
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn summarize(report: &VerificationReport) {
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Error => "error",
        };
        match (c.metric, &c.message) {
            (Some(m), _) => eprintln!("{}: {status} (metric {m:.3e}, tolerance {:.1e})", c.name, c.tolerance),
            (None, Some(msg)) => eprintln!("{}: {status} ({msg})", c.name),
            (None, None) => eprintln!("{}: {status}", c.name),
        }
    }
}

/// `verify`: writes the JSON report to `out` (or stdout) and a one-line
/// summary per check to stderr.
pub fn cmd_verify(mu: f64, lambda: f64, tol: Option<f64>, out: Option<&Path>) -> i32 {
    let params = match DeformationParams::new(mu, lambda).and_then(|p| check_tol(tol).map(|_| p)) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let report = run_checks(params, VerifyOptions { tol_override: tol });
    summarize(&report);
    if let Err(e) = emit(out, &(report.to_json() + "\n")) {
        return usage(format!("cannot write report: {e}"));
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Uniform grid from (min, max, steps); see the crate README for the rules.
pub fn grid(target: Target, (min, max, steps): (f64, f64, usize)) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::Domain("grid bounds must be finite".into()));
    }
    let lowest_ok = if target == Target::Gaussian {
        min >= 0.0
    } else {
        min > 0.0
    };
    if !lowest_ok {
        let bound = if target == Target::Gaussian { "r >= 0" } else { "r > 0" };
        return Err(Error::Domain(format!("grid must satisfy {bound}, got MIN = {min}")));
    }
    match steps {
        0 => Err(Error::Domain("STEPS must be at least 1".into())),
        1 if min == max => Ok(vec![min]),
        1 => Err(Error::Domain("a single step needs MIN = MAX".into())),
        _ if min < max => {
            let last = (steps - 1) as f64;
            Ok((0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        max
                    } else {
                        min + (max - min) * i as f64 / last
                    }
                })
                .collect())
        }
        _ => Err(Error::Domain(format!("need MIN < MAX, got {min} and {max}"))),
    }
}

/// `v` with exactly `digits` significant digits; plain notation for
/// exponents in [-5, 15), scientific outside.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = mantissa.strip_prefix('-').map_or(("", mantissa), |m| ("-", m));
    let digits_only: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits_only)
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits_only.len() {
            format!("{}{}", digits_only, "0".repeat(int_len - digits_only.len()))
        } else {
            format!("{}.{}", &digits_only[..int_len], &digits_only[int_len..])
        }
    };
    format!("{sign}{body}")
}

/// [`format_sig`] with trailing zeros removed, for the grid column.
pub fn format_coordinate(r: f64) -> String {
    let s = format_sig(r, 10);
    if s.contains('.') && !s.contains('e') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Builds the table text for `target`.
pub fn tabulate(target: Target, params: DeformationParams, points: &[f64]) -> Result<String> {
    let mut text = String::new();
    let basis = |kind| RadialDensity::basis(kind, params);
    match target {
        Target::Gaussian => {
            text.push_str("r,gaussian\n");
            for &r in points {
                text.push_str(&format!(
                    "{},{}\n",
                    format_coordinate(r),
                    format_sig(gaussian_density(r), 10)
                ));
            }
        }
        Target::DensityEven | Target::DensityOdd => {
            let (d, name) = if target == Target::DensityEven {
                (RadialDensity::even_measure(params)?, "density_even")
            } else {
                (RadialDensity::odd_measure(params)?, "density_odd")
            };
            text.push_str(&format!("r,{name}\n"));
            for &r in points {
                text.push_str(&format!("{},{}\n", format_coordinate(r), format_sig(d.eval(r)?, 10)));
            }
        }
        Target::PairK | Target::PairI => {
            let (e, o) = if target == Target::PairK {
                (basis(DensityKind::EvenK)?, basis(DensityKind::OddK)?)
            } else {
                (basis(DensityKind::EvenI)?, basis(DensityKind::OddI)?)
            };
            text.push_str("r,even,odd\n");
            for &r in points {
                let row = format!(
                    "{},{},{}\n",
                    format_coordinate(r),
                    format_sig(e.eval(r)?, 10),
                    format_sig(o.eval(r)?, 10)
                );
                text.push_str(&row);
            }
        }
    }
    Ok(text)
}

/// `tabulate`: writes the table to `out` (or stdout).
pub fn cmd_tabulate(target: Target, mu: f64, lambda: f64, r: (f64, f64, usize), out: Option<&Path>) -> i32 {
    let text =
        DeformationParams::new(mu, lambda).and_then(|p| grid(target, r).and_then(|pts| tabulate(target, p, &pts)));
    match text {
        Ok(text) => match emit(out, &text) {
            Ok(()) => EXIT_PASS,
            Err(e) => usage(format!("cannot write table: {e}")),
        },
        Err(e) => usage(e),
    }
}

/// `sweep`: one row per μ with every check's metric and the overall status.
pub fn cmd_sweep(mus: &[f64], lambda: f64, tol: Option<f64>, out: Option<&Path>) -> i32 {
    if mus.is_empty() {
        return usage("--mu needs at least one value");
    }
    let params: Result<Vec<_>> = mus.iter().map(|&mu| DeformationParams::new(mu, lambda)).collect();
    let params = match params.and_then(|p| check_tol(tol).map(|_| p)) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };

    let mut text = format!("mu,{},status\n", CHECK_NAMES.join(","));
    let mut all_pass = true;
    for p in params {
        let report = run_checks(p, VerifyOptions { tol_override: tol });
        let pass = report.passed();
        all_pass &= pass;
        eprintln!(
            "mu = {}: {}",
            format_coordinate(p.mu()),
            if pass { "pass" } else { "fail" }
        );
        let metrics: Vec<String> = report
            .checks
            .iter()
            .map(|c| match (c.status, c.metric) {
                (CheckStatus::Error, _) | (_, None) => "error".to_string(),
                (_, Some(m)) => format!("{m:.3e}"),
            })
            .collect();
        let status = if pass { "pass" } else { "fail" };
        text.push_str(&format!(
            "{},{},{status}\n",
            format_coordinate(p.mu()),
            metrics.join(",")
        ));
    }
    if let Err(e) = emit(out, &text) {
        return usage(format!("cannot write table: {e}"));
    }
    if all_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
