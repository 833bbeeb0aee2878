//! The verification suite: thirteen named checks, each reduced to one
//! metric compared against one tolerance, collected into a JSON report.
//!
//! Report schema (`toolVersion` tracks the crate version):
//!
//! ```json
//! {
//!   "params": {"mu": 0.7, "lambda": 1.0},
//!   "checks": [{"name": "...", "status": "pass|fail|error", "metric": 1e-12, "tolerance": 1e-9}],
//!   "timestamp": "2024-01-01T00:00:00Z",
//!   "toolVersion": "0.1.0"
//! }
//! ```
//!
//! A check that cannot be evaluated has status `error`, a `null` metric and
//! an extra `message` field.

use std::f64::consts::PI;

use chrono::{DateTime, SecondsFormat, Utc};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::holo::{mu_factorial, HoloPoly};
use crate::measures::{density_even, density_odd, gaussian_density, total_mass, DeformationParams, RadialDensity};
use crate::odesys::{
    analytic_pair, change_of_variable_check, classify_tail, coupled_residual, decoupled_residual, equal_density_gap,
    integrate_coupled, PairKind, Parity, TailClass,
};
use crate::pairing::{adjointness_gap, monomial_norm_sq, QuadratureSpec};
use crate::specfun::{bessel_i, bessel_k, gamma, RealOrder};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Check names in report order.
pub const CHECK_NAMES: [&str; 13] = [
    "gaussian-reduction",
    "probability-normalization",
    "odd-mass",
    "coupled-residuals",
    "decoupled-residuals",
    "ode-cross-check",
    "adjointness",
    "commutation-relation",
    "monomial-norms",
    "tail-classification",
    "single-measure-obstruction",
    "special-function-floor",
    "change-of-variable",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// `None` when the check could not be evaluated.
    pub metric: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub params: DeformationParams,
    pub checks: Vec<CheckResult>,
    pub timestamp: String,
    pub tool_version: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

/// Options for [`run_checks`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Replaces the default tolerance of every numeric check.
    pub tol_override: Option<f64>,
}

/// Reads SOURCE_DATE_EPOCH if set, otherwise the current UTC time.
pub fn report_timestamp() -> String {
    let fixed = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    fixed
        .unwrap_or_else(Utc::now)
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

type CheckFn<'a> = Box<dyn Fn() -> Result<f64> + 'a>;

/// Runs every check at `params` and assembles the report.
pub fn run_checks(params: DeformationParams, opts: VerifyOptions) -> VerificationReport {
    let q = QuadratureSpec::default();
    let numeric = |default: f64| opts.tol_override.unwrap_or(default);
    let p = params;
    let q = &q;

    let specs: [(&str, f64, CheckFn); 13] = [
        (
            CHECK_NAMES[0],
            numeric(1e-10),
            Box::new(move || gaussian_reduction(p.lambda())),
        ),
        (
            CHECK_NAMES[1],
            numeric(1e-8),
            Box::new(move || probability_normalization(p, q)),
        ),
        (CHECK_NAMES[2], numeric(1e-8), Box::new(move || odd_mass(p, q))),
        (
            CHECK_NAMES[3],
            numeric(1e-9),
            Box::new(move || coupled_residuals(p.mu())),
        ),
        (
            CHECK_NAMES[4],
            numeric(1e-7),
            Box::new(move || decoupled_residuals(p.mu())),
        ),
        (CHECK_NAMES[5], numeric(1e-6), Box::new(move || ode_cross_check(p.mu()))),
        (CHECK_NAMES[6], numeric(1e-8), Box::new(move || adjointness(p, q))),
        (
            CHECK_NAMES[7],
            numeric(1e-14),
            Box::new(move || commutation_relation(p.mu())),
        ),
        (CHECK_NAMES[8], numeric(1e-7), Box::new(move || monomial_norms(p, q))),
        (CHECK_NAMES[9], 0.0, Box::new(move || tail_classification(p.mu(), q))),
        (
            CHECK_NAMES[10],
            numeric(1e-9),
            Box::new(move || single_measure_obstruction(p.mu())),
        ),
        (
            CHECK_NAMES[11],
            numeric(1e-12),
            Box::new(move || special_function_floor(p.mu())),
        ),
        (CHECK_NAMES[12], numeric(0.0), Box::new(change_of_variable)),
    ];

    let checks = specs
        .iter()
        .map(|(name, tolerance, run)| {
            let (status, metric, message) = match run() {
                Ok(m) if m <= *tolerance => (CheckStatus::Pass, Some(m), None),
                Ok(m) => (CheckStatus::Fail, Some(m), None),
                Err(e) => (CheckStatus::Error, None, Some(e.to_string())),
            };
            CheckResult {
                name: name.to_string(),
                status,
                metric,
                tolerance: *tolerance,
                message,
            }
        })
        .collect();

    VerificationReport {
        params,
        checks,
        timestamp: report_timestamp(),
        tool_version: TOOL_VERSION.to_string(),
    }
}

/// 50 points on [0.1, 4].
fn reduction_grid() -> impl Iterator<Item = f64> {
    (0..50).map(|i| 0.1 + 3.9 * i as f64 / 49.0)
}

/// 30 points on [0.2, 2.5].
fn residual_grid() -> impl Iterator<Item = f64> {
    (0..30).map(|i| 0.2 + 2.3 * i as f64 / 29.0)
}

/// max |ν_{e,o}(0, λ; r) − λ e^{−λr²}/π| on the grid.
fn gaussian_reduction(lambda: f64) -> Result<f64> {
    let p = DeformationParams::new(0.0, lambda)?;
    let mut worst: f64 = 0.0;
    for r in reduction_grid() {
        let g = lambda * gaussian_density(lambda.sqrt() * r);
        worst = worst
            .max((density_even(p, r)? - g).abs())
            .max((density_odd(p, r)? - g).abs());
    }
    Ok(worst)
}

fn probability_normalization(p: DeformationParams, q: &QuadratureSpec) -> Result<f64> {
    Ok((total_mass(&RadialDensity::even_measure(p)?, q)? - 1.0).abs())
}

/// |mass(ν_o) − √π Γ(μ+1)/Γ(μ+1/2)|.
fn odd_mass(p: DeformationParams, q: &QuadratureSpec) -> Result<f64> {
    let mu = p.mu();
    let expected = PI.sqrt() * gamma(mu + 1.0)? / gamma(mu + 0.5)?;
    Ok((total_mass(&RadialDensity::odd_measure(p)?, q)? - expected).abs())
}

fn coupled_residuals(mu: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for kind in [PairKind::K, PairKind::I] {
        let pair = analytic_pair(kind, mu)?;
        for r in residual_grid() {
            worst = worst.max(coupled_residual(&pair, mu, r)?.relative());
        }
    }
    Ok(worst)
}

fn decoupled_residuals(mu: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for kind in [PairKind::K, PairKind::I] {
        let pair = analytic_pair(kind, mu)?;
        for r in residual_grid() {
            worst = worst
                .max(decoupled_residual(Parity::Even, &pair.even, mu, r)?.relative())
                .max(decoupled_residual(Parity::Odd, &pair.odd, mu, r)?.relative());
        }
    }
    Ok(worst)
}

fn ode_cross_check(mu: f64) -> Result<f64> {
    let pair = analytic_pair(PairKind::K, mu)?;
    let (e0, o0) = pair.eval(0.5)?;
    integrate_coupled(mu, 0.5, e0, o0, 2.0, 1e-12)?.max_relative_deviation(&pair)
}

/// max over m = 0..8 of |⟨a*z^m, z^{m+1}⟩ − λ⁻¹⟨z^m, a z^{m+1}⟩| / max(1, |⟨a*z^m, z^{m+1}⟩|).
fn adjointness(p: DeformationParams, q: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 0..=8 {
        let f = HoloPoly::z_pow(m);
        let g = HoloPoly::z_pow(m + 1);
        let lhs = crate::pairing::inner_product(&f.creation(), &g, p, q)?;
        let gap = adjointness_gap(&f, &g, p, q)?;
        worst = worst.max(gap.norm() / lhs.norm().max(1.0));
    }
    Ok(worst)
}

/// Max coefficient error of [a, a*]f against f + 2μJf on 100 seeded random
/// polynomials of degree ≤ 12.
fn commutation_relation(mu: f64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let deg = rng.random_range(0..=12);
        let f = HoloPoly::new(
            (0..=deg)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        );
        let lhs = f.commutator_action(mu);
        let rhs = &f + &(&f.parity_op() * (2.0 * mu));
        for k in 0..=deg {
            worst = worst.max((lhs.coeff(k) - rhs.coeff(k)).norm());
        }
    }
    Ok(worst)
}

/// Max relative error of ‖z^n‖² against γ_μ(n)/λ^n for n = 0..10.
fn monomial_norms(p: DeformationParams, q: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        let exact = mu_factorial(n, p.mu()) / p.lambda().powi(n as i32);
        worst = worst.max((monomial_norm_sq(n, p, q)? - exact).abs() / exact);
    }
    Ok(worst)
}

/// Number of misclassified pairs (K should be integrable, I divergent).
fn tail_classification(mu: f64, q: &QuadratureSpec) -> Result<f64> {
    let mut wrong = 0;
    if classify_tail(&analytic_pair(PairKind::K, mu)?, q)? != TailClass::Integrable {
        wrong += 1;
    }
    if classify_tail(&analytic_pair(PairKind::I, mu)?, q)? != TailClass::Divergent {
        wrong += 1;
    }
    Ok(wrong as f64)
}

/// Gap for the Gaussian: |gap(0.5, 1)| against 0.1170996630, zero at μ = 0,
/// and −2μ g(r)/r² at the requested μ.
fn single_measure_obstruction(mu: f64) -> Result<f64> {
    let g = RadialDensity::gaussian();
    let mut worst = (equal_density_gap(&g, 0.5, 1.0)?.abs() - 0.117_099_663_0).abs();
    for r in residual_grid() {
        worst = worst.max(equal_density_gap(&g, 0.0, r)?.abs());
        let expected = -2.0 * mu * gaussian_density(r) / (r * r);
        worst = worst.max((equal_density_gap(&g, mu, r)? - expected).abs());
    }
    Ok(worst)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// max(closed-form error, order-symmetry error, Wronskian error · 1e-3),
/// all relative, on a 60-point log grid over [0.05, 30].
fn special_function_floor(mu: f64) -> Result<f64> {
    let mut closed: f64 = 0.0;
    let mut symmetry: f64 = 0.0;
    let mut wronskian: f64 = 0.0;
    let orders = [0.0, 0.5, 1.3, mu - 0.5, mu + 0.5];
    for i in 0..60 {
        let x = 0.05 * (600f64).powf(i as f64 / 59.0);
        let (s, c) = (x.sinh(), x.cosh());
        let e = (-x).exp();
        let pref = (2.0 / (PI * x)).sqrt();
        let kpref = (PI / (2.0 * x)).sqrt();
        closed = closed
            .max(rel(bessel_i(0.5, x)?, pref * s))
            .max(rel(bessel_i(-0.5, x)?, pref * c))
            .max(rel(bessel_i(1.5, x)?, pref * (c - s / x)))
            .max(rel(bessel_k(0.5, x)?, kpref * e))
            .max(rel(bessel_k(1.5, x)?, kpref * e * (1.0 + 1.0 / x)));
        for &nu in &orders {
            if -nu.abs() > RealOrder::MIN {
                symmetry = symmetry.max(rel(bessel_k(-nu.abs(), x)?, bessel_k(nu.abs(), x)?));
            }
            let w = bessel_i(nu, x)? * bessel_k(nu + 1.0, x)? + bessel_i(nu + 1.0, x)? * bessel_k(nu, x)?;
            wronskian = wronskian.max(rel(w, 1.0 / x));
        }
    }
    Ok(closed.max(symmetry).max(1e-3 * wronskian))
}

/// Max |const − closed form| over μ ∈ {0, 0.25, 1, 2.5}; exact arithmetic gives 0.
fn change_of_variable() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for mu in [0.0, 0.25, 1.0, 2.5] {
        let c = change_of_variable_check(mu);
        worst = worst
            .max((c.even_const - c.even_const_closed()).abs())
            .max((c.odd_const - c.odd_const_closed()).abs());
    }
    Ok(worst)
}
