//! The even and odd deformed densities, the Gaussian reference density and
//! plane masses.
//!
//! Densities are radial: they are functions of r = |z| and every plane
//! integral is taken in polar form, 2π ∫_0^∞ ν(r) r dr. With ρ = √λ·r,
//!
//! ```text
//! ν_e(r) = λ c_μ ρ^{2μ+1} K_{μ-1/2}(ρ²)
//! ν_o(r) = λ c_μ ρ^{2μ+1} K_{μ+1/2}(ρ²)
//! c_μ    = 2^{1/2-μ} / (π Γ(μ+1/2))
//! ```

use std::f64::consts::{FRAC_1_PI, PI};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::odesys::DensityPair;
use crate::pairing::{radial_integral, QuadratureSpec};
use crate::specfun::{bessel_i, bessel_i_prime, bessel_k, bessel_k_prime, gamma};

/// The deformation parameter μ and the scale λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationParams {
    mu: f64,
    lambda: f64,
}

impl DeformationParams {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        if !(mu > -0.5 && mu.is_finite()) {
            return Err(Error::Domain(format!(
                "deformation parameter must satisfy μ > −1/2, got μ = {mu}"
            )));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("scale must satisfy λ > 0, got λ = {lambda}")));
        }
        Ok(Self { mu, lambda })
    }

    /// Parameters with λ = 1.
    pub fn unit(mu: f64) -> Result<Self> {
        Self::new(mu, 1.0)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Which closed form a [`RadialDensity`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DensityKind {
    /// ρ^{2μ+1} K_{μ-1/2}(ρ²)
    EvenK,
    /// ρ^{2μ+1} K_{μ+1/2}(ρ²)
    OddK,
    /// −ρ^{2μ+1} I_{μ-1/2}(ρ²)
    EvenI,
    /// ρ^{2μ+1} I_{μ+1/2}(ρ²)
    OddI,
    /// e^{-ρ²} / π
    Gaussian,
    /// A user closure or a linear combination of the above.
    Custom,
}

type BesselFn = fn(f64, f64) -> Result<f64>;

type CustomFn = Arc<dyn Fn(f64) -> Result<(f64, f64)> + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Basis,
    Sum(Vec<RadialDensity>),
    Custom(CustomFn),
}

/// A radial density r ↦ scale·b(√λ r) with its r-derivative.
///
/// Immutable once built and cheap to clone; closures are shared.
#[derive(Clone)]
pub struct RadialDensity {
    kind: DensityKind,
    params: DeformationParams,
    scale: f64,
    repr: Repr,
}

impl fmt::Debug for RadialDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("RadialDensity");
        s.field("kind", &self.kind)
            .field("params", &self.params)
            .field("scale", &self.scale);
        if let Repr::Sum(terms) = &self.repr {
            s.field("terms", terms);
        }
        s.finish()
    }
}

/// c_μ = 2^{1/2-μ} / (π Γ(μ+1/2)).
pub fn normalization_constant(mu: f64) -> Result<f64> {
    Ok((0.5 - mu).exp2() / (PI * gamma(mu + 0.5)?))
}

impl RadialDensity {
    /// One of the closed forms with unit scale. `Custom` is rejected.
    pub fn basis(kind: DensityKind, params: DeformationParams) -> Result<Self> {
        if kind == DensityKind::Custom {
            return Err(Error::Domain(
                "a custom density needs a closure, use RadialDensity::custom".into(),
            ));
        }
        Ok(Self {
            kind,
            params,
            scale: 1.0,
            repr: Repr::Basis,
        })
    }

    /// The normalized even density ν_e.
    pub fn even_measure(params: DeformationParams) -> Result<Self> {
        let c = params.lambda * normalization_constant(params.mu)?;
        Ok(Self::basis(DensityKind::EvenK, params)?.scaled(c))
    }

    /// The odd density ν_o with the same constant as ν_e.
    pub fn odd_measure(params: DeformationParams) -> Result<Self> {
        let c = params.lambda * normalization_constant(params.mu)?;
        Ok(Self::basis(DensityKind::OddK, params)?.scaled(c))
    }

    /// e^{-r²}/π.
    pub fn gaussian() -> Self {
        let params = DeformationParams { mu: 0.0, lambda: 1.0 };
        Self {
            kind: DensityKind::Gaussian,
            params,
            scale: 1.0,
            repr: Repr::Basis,
        }
    }

    /// A density given by a closure returning (value, derivative) at r.
    pub fn custom<F>(params: DeformationParams, f: F) -> Self
    where
        F: Fn(f64) -> Result<(f64, f64)> + Send + Sync + 'static,
    {
        Self {
            kind: DensityKind::Custom,
            params,
            scale: 1.0,
            repr: Repr::Custom(Arc::new(f)),
        }
    }

    /// Σ c_i d_i. The parameters of the first term label the result.
    pub fn linear_combination(terms: &[(f64, RadialDensity)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Degenerate("empty linear combination".into()))?;
        let parts = terms.iter().map(|(c, d)| d.scaled(*c)).collect();
        Ok(Self {
            kind: DensityKind::Custom,
            params: first.1.params,
            scale: 1.0,
            repr: Repr::Sum(parts),
        })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            scale: self.scale * factor,
            ..self.clone()
        }
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn params(&self) -> DeformationParams {
        self.params
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        self.eval_with_deriv(r).map(|(v, _)| v)
    }

    pub fn deriv(&self, r: f64) -> Result<f64> {
        self.eval_with_deriv(r).map(|(_, d)| d)
    }

    /// (value, d value / dr) at r.
    pub fn eval_with_deriv(&self, r: f64) -> Result<(f64, f64)> {
        let origin_ok = self.kind == DensityKind::Gaussian && r == 0.0;
        if !(r > 0.0 || origin_ok) || !r.is_finite() {
            return Err(Error::Domain(format!("densities are defined for r > 0, got r = {r}")));
        }
        let (v, d) = match &self.repr {
            Repr::Basis => self.basis_value(r)?,
            Repr::Custom(f) => f(r)?,
            Repr::Sum(terms) => {
                let mut acc = (0.0, 0.0);
                for t in terms {
                    let (v, d) = t.eval_with_deriv(r)?;
                    acc.0 += v;
                    acc.1 += d;
                }
                acc
            }
        };
        let (v, d) = (self.scale * v, self.scale * d);
        if v.is_finite() && d.is_finite() {
            Ok((v, d))
        } else {
            Err(Error::Range(format!(
                "{:?} density is not finite at r = {r}",
                self.kind
            )))
        }
    }

    fn basis_value(&self, r: f64) -> Result<(f64, f64)> {
        let sqrt_lambda = self.params.lambda.sqrt();
        let rho = sqrt_lambda * r;
        let x = rho * rho;
        if self.kind == DensityKind::Gaussian {
            let v = FRAC_1_PI * (-x).exp();
            return Ok((v, -2.0 * rho * v * sqrt_lambda));
        }
        let mu = self.params.mu;
        let (order, sign, bessel, bessel_prime): (f64, f64, BesselFn, BesselFn) = match self.kind {
            DensityKind::EvenK => (mu - 0.5, 1.0, bessel_k, bessel_k_prime),
            DensityKind::OddK => (mu + 0.5, 1.0, bessel_k, bessel_k_prime),
            DensityKind::EvenI => (mu - 0.5, -1.0, bessel_i, bessel_i_prime),
            DensityKind::OddI => (mu + 0.5, 1.0, bessel_i, bessel_i_prime),
            DensityKind::Gaussian | DensityKind::Custom => unreachable!("handled by the caller"),
        };
        let alpha = 2.0 * mu + 1.0;
        let b = bessel(order, x)?;
        let db = bessel_prime(order, x)?;
        let pow = rho.powf(alpha);
        // d/dρ [ρ^α B(ρ²)] = ρ^α (α B / ρ + 2ρ B').
        let value = sign * pow * b;
        let d_rho = sign * pow * (alpha * b / rho + 2.0 * rho * db);
        Ok((value, d_rho * sqrt_lambda))
    }
}

/// ν_e(r).
pub fn density_even(params: DeformationParams, r: f64) -> Result<f64> {
    RadialDensity::even_measure(params)?.eval(r)
}

/// ν_o(r).
pub fn density_odd(params: DeformationParams, r: f64) -> Result<f64> {
    RadialDensity::odd_measure(params)?.eval(r)
}

/// e^{-r²}/π.
pub fn gaussian_density(r: f64) -> f64 {
    FRAC_1_PI * (-r * r).exp()
}

/// 2π ∫_0^∞ d(r) r dr.
pub fn total_mass(d: &RadialDensity, q: &QuadratureSpec) -> Result<f64> {
    Ok(2.0 * PI * radial_integral(|r| d.eval(r), q)?)
}

/// Rescales both components by one factor so the even mass is 1.
pub fn normalize_pair(pair: &DensityPair, q: &QuadratureSpec) -> Result<DensityPair> {
    let mass = total_mass(&pair.even, q)?;
    if mass == 0.0 {
        return Err(Error::Degenerate("even component has zero mass".into()));
    }
    if !(mass > 0.0) {
        return Err(Error::Degenerate(format!(
            "even component has non-positive mass {mass}"
        )));
    }
    Ok(pair.scaled(1.0 / mass))
}
