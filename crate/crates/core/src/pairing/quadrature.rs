//! Adaptive Gauss-Kronrod quadrature for radial integrals ∫_0^∞ g(r) r dr.
//!
//! The integral is split into a head panel [0, R] and tail panels of width
//! R/2. Every panel is integrated with globally adaptive 21-point
//! Gauss-Kronrod bisection, which never evaluates the endpoints, so an
//! integrable power singularity at r = 0 is handled by repeated bisection
//! toward the origin. Tail panels are added until their geometric decay
//! bounds the remainder; sustained growth is reported as divergence.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Accuracy and truncation contract for radial integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target relative error, in [1e-13, 1e-4].
    pub rel_tol: f64,
    /// Absolute error floor, used when the integral is (near) zero.
    pub abs_tol: f64,
    /// Total number of Gauss-Kronrod bisections allowed, at least 16.
    pub max_subdivisions: usize,
    /// Upper end R of the head panel; the tail beyond it is added adaptively.
    pub truncation_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
            truncation_radius: 8.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-13..=1e-4).contains(&self.rel_tol) {
            return Err(Error::Domain(format!(
                "rel_tol must lie in [1e-13, 1e-4], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Domain(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 16 {
            return Err(Error::Domain(format!(
                "max_subdivisions must be >= 16, got {}",
                self.max_subdivisions
            )));
        }
        if !(self.truncation_radius > 0.0 && self.truncation_radius.is_finite()) {
            return Err(Error::Domain(format!(
                "truncation_radius must be positive, got {}",
                self.truncation_radius
            )));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn eval_finite<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!("integrand is not finite at r = {x}")))
    }
}

/// One 21-point Gauss-Kronrod panel with the QUADPACK error estimate.
fn gk21<F>(f: &F, a: f64, b: f64) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = eval_finite(f, center)?;

    let mut res_g = 0.0;
    let mut res_k = f_center * WGK[10];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval_finite(f, center - dx)?;
        let f2 = eval_finite(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let value = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(IntegralEstimate { value, error: err })
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    est: IntegralEstimate,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the schedule is deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.est
            .error
            .total_cmp(&other.est.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive bisection on [a, b], drawing on a shared subdivision budget.
fn adaptive<F>(f: &F, a: f64, b: f64, spec: &QuadratureSpec, budget: &mut usize) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    let first = gk21(f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, est: first });

    while error > spec.target(value) {
        if *budget == 0 {
            return Err(Error::Accuracy {
                estimate: value,
                error_bound: error,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // The segment cannot be split further in f64.
            return Err(Error::Accuracy {
                estimate: value,
                error_bound: error,
            });
        }
        *budget -= 1;
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        value += left.value + right.value - worst.est.value;
        error += left.error + right.error - worst.est.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            est: left,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            est: right,
        });
    }

    // Resum in position order to shed the drift of the running totals.
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segments.iter().map(|s| s.est.value).sum();
    let error = segments.iter().map(|s| s.est.error).sum();
    Ok(IntegralEstimate { value, error })
}

const MAX_TAIL_PANELS: usize = 40;
const GROWTH_PANELS_FOR_DIVERGENCE: usize = 3;

/// ∫_a^b g(r) dr with the adaptive rule (no extra factor of r).
pub fn integrate_interval<F>(g: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let mut budget = spec.max_subdivisions;
    adaptive(&g, a, b, spec, &mut budget)
}

/// ∫_0^∞ g(r) r dr with an error estimate.
pub fn integrate_radial<F>(g: F, spec: &QuadratureSpec) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let h = |r: f64| -> Result<f64> { Ok(g(r)? * r) };
    let mut budget = spec.max_subdivisions;

    let head_end = spec.truncation_radius;
    let head = adaptive(&h, 0.0, head_end, spec, &mut budget)?;
    let mut value = head.value;
    let mut error = head.error;

    let width = 0.5 * head_end;
    let mut lo = head_end;
    let mut prev: Option<f64> = None;
    let mut growth = 0;
    for _ in 0..MAX_TAIL_PANELS {
        let panel = match adaptive(&h, lo, lo + width, spec, &mut budget) {
            Ok(p) => p,
            Err(Error::Range(msg)) => return Err(Error::Divergence(format!("integrand overflows in the tail: {msg}"))),
            Err(e) => return Err(e),
        };
        lo += width;
        value += panel.value;
        error += panel.error;
        let mag = panel.value.abs();
        let target = spec.target(value);

        if let Some(p) = prev {
            if mag > p && mag > target {
                growth += 1;
                if growth >= GROWTH_PANELS_FOR_DIVERGENCE {
                    return Err(Error::Divergence(format!(
                        "tail panels keep growing up to r = {lo}, last panel {mag:e}"
                    )));
                }
            } else {
                growth = 0;
            }
            if mag == 0.0 {
                return Ok(IntegralEstimate { value, error });
            }
            if mag < p {
                let ratio = mag / p;
                let remainder = mag * ratio / (1.0 - ratio);
                if remainder <= 0.25 * target {
                    return Ok(IntegralEstimate {
                        value,
                        error: error + remainder,
                    });
                }
            }
        }
        prev = Some(mag);
    }
    Err(Error::Accuracy {
        estimate: value,
        error_bound: error.max(prev.unwrap_or(f64::INFINITY)),
    })
}

/// ∫_0^∞ g(r) r dr.
pub fn radial_integral<F>(g: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    integrate_radial(g, spec).map(|e| e.value)
}
