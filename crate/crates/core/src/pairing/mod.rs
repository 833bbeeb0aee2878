//! Radial quadrature and the two-measure inner product
//!
//! ```text
//! ⟨f, g⟩ = ∫ conj(f_e) g_e dν_e + ∫ conj(f_o) g_o dν_o
//! ```
//!
//! Angular integrals are done exactly: ∫ conj(z^m) z^n dθ = 2π r^{2n} δ_mn,
//! so for polynomials the pairing reduces to radial moments
//! M_n = 2π ∫_0^∞ r^{2n} ν_{n mod 2}(r) r dr and parity orthogonality is
//! structural.

mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use quadrature::{integrate_interval, integrate_radial, radial_integral, IntegralEstimate, QuadratureSpec};

use crate::error::{Error, Result};
use crate::holo::HoloPoly;
use crate::measures::DeformationParams;
use crate::odesys::DensityPair;

/// Largest degree accepted by [`monomial_norm_sq`].
pub const MAX_NORM_DEGREE: usize = 12;

/// M_n = 2π ∫_0^∞ r^{2n} ν(r) r dr, with ν the component of matching parity.
pub fn moment(pair: &DensityPair, n: usize, q: &QuadratureSpec) -> Result<f64> {
    let density = if n.is_multiple_of(2) { &pair.even } else { &pair.odd };
    let exponent = i32::try_from(2 * n).map_err(|_| Error::Domain(format!("degree {n} too large")))?;
    Ok(2.0 * PI * radial_integral(|r| Ok(r.powi(exponent) * density.eval(r)?), q)?)
}

/// ⟨f, g⟩ against an arbitrary density pair. Conjugate-linear in `f`.
pub fn inner_product_with(pair: &DensityPair, f: &HoloPoly, g: &HoloPoly, q: &QuadratureSpec) -> Result<Complex64> {
    let shared = f.coeffs().len().min(g.coeffs().len());
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..shared {
        let w = f.coeff(n).conj() * g.coeff(n);
        if w != Complex64::new(0.0, 0.0) {
            acc += w * moment(pair, n, q)?;
        }
    }
    Ok(acc)
}

/// ⟨f, g⟩ for the normalized measure pair at `params`.
pub fn inner_product(f: &HoloPoly, g: &HoloPoly, params: DeformationParams, q: &QuadratureSpec) -> Result<Complex64> {
    inner_product_with(&DensityPair::measure_pair(params)?, f, g, q)
}

/// ⟨a* f, g⟩ − λ⁻¹⟨f, a g⟩ against an arbitrary pair.
///
/// At λ = 1 this is the plain adjointness defect; the λ⁻¹ accounts for the
/// rescaled measure, under which a* and λ⁻¹a are adjoint.
pub fn adjointness_gap_with(
    pair: &DensityPair,
    lambda: f64,
    mu: f64,
    f: &HoloPoly,
    g: &HoloPoly,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let lhs = inner_product_with(pair, &f.creation(), g, q)?;
    let rhs = inner_product_with(pair, f, &g.annihilation(mu), q)?;
    Ok(lhs - rhs / lambda)
}

/// ⟨a* f, g⟩ − λ⁻¹⟨f, a g⟩ for the normalized measure pair.
pub fn adjointness_gap(f: &HoloPoly, g: &HoloPoly, params: DeformationParams, q: &QuadratureSpec) -> Result<Complex64> {
    let pair = DensityPair::measure_pair(params)?;
    adjointness_gap_with(&pair, params.lambda(), params.mu(), f, g, q)
}

/// ‖z^n‖² by quadrature; equals γ_μ(n)/λ^n for the measure pair.
pub fn monomial_norm_sq(n: usize, params: DeformationParams, q: &QuadratureSpec) -> Result<f64> {
    if n > MAX_NORM_DEGREE {
        return Err(Error::Domain(format!(
            "monomial degree must be <= {MAX_NORM_DEGREE}, got {n}"
        )));
    }
    let z = HoloPoly::z_pow(n);
    Ok(inner_product(&z, &z, params, q)?.re)
}
