//! The first-order system tying the even and odd densities together, its
//! decoupled second-order forms, the analytic K- and I-type solution pairs,
//! a numerical integrator and tail classification.
//!
//! In radial form the system reads
//!
//! ```text
//! ν_o = -(1/2r) ν_e' + (2μ/r²) ν_e
//! ν_e = -(1/2r) ν_o'
//! ```
//!
//! and, solved for the derivatives, ν_e' = (4μ/r)ν_e − 2rν_o, ν_o' = −2rν_e.

mod dopri;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{DeformationParams, DensityKind, RadialDensity};
use crate::pairing::{integrate_interval, QuadratureSpec};
use crate::specfun::{bessel_i, bessel_i_prime, bessel_i_second, bessel_k, bessel_k_prime, bessel_k_second, RealOrder};

/// Which analytic solution of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairKind {
    /// (r^{2μ+1}K_{μ-1/2}(r²), r^{2μ+1}K_{μ+1/2}(r²)), decaying.
    K,
    /// (−r^{2μ+1}I_{μ-1/2}(r²), r^{2μ+1}I_{μ+1/2}(r²)), growing.
    I,
}

/// Coordinates of an analytic pair in the basis {K-pair, I-pair}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisCoords {
    pub k_coeff: f64,
    pub i_coeff: f64,
}

/// An (even, odd) pair of radial densities.
#[derive(Debug, Clone)]
pub struct DensityPair {
    pub even: RadialDensity,
    pub odd: RadialDensity,
    coords: Option<BasisCoords>,
}

impl DensityPair {
    /// An arbitrary pair, not tied to the analytic basis.
    pub fn new(even: RadialDensity, odd: RadialDensity) -> Self {
        Self {
            even,
            odd,
            coords: None,
        }
    }

    /// k·(K-pair) + i·(I-pair) at λ = 1.
    pub fn combination(mu: f64, k_coeff: f64, i_coeff: f64) -> Result<Self> {
        let p = DeformationParams::unit(mu)?;
        let basis = |kind| RadialDensity::basis(kind, p);
        let even = RadialDensity::linear_combination(&[
            (k_coeff, basis(DensityKind::EvenK)?),
            (i_coeff, basis(DensityKind::EvenI)?),
        ])?;
        let odd = RadialDensity::linear_combination(&[
            (k_coeff, basis(DensityKind::OddK)?),
            (i_coeff, basis(DensityKind::OddI)?),
        ])?;
        Ok(Self {
            even,
            odd,
            coords: Some(BasisCoords { k_coeff, i_coeff }),
        })
    }

    /// The normalized measure densities (ν_e, ν_o) for the given parameters.
    pub fn measure_pair(params: DeformationParams) -> Result<Self> {
        let even = RadialDensity::even_measure(params)?;
        let odd = RadialDensity::odd_measure(params)?;
        let coords = (params.lambda() == 1.0).then(|| BasisCoords {
            k_coeff: even.scale(),
            i_coeff: 0.0,
        });
        Ok(Self { even, odd, coords })
    }

    pub fn coords(&self) -> Option<BasisCoords> {
        self.coords
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            even: self.even.scaled(factor),
            odd: self.odd.scaled(factor),
            coords: self.coords.map(|c| BasisCoords {
                k_coeff: c.k_coeff * factor,
                i_coeff: c.i_coeff * factor,
            }),
        }
    }

    /// (ν_e(r), ν_o(r)).
    pub fn eval(&self, r: f64) -> Result<(f64, f64)> {
        Ok((self.even.eval(r)?, self.odd.eval(r)?))
    }
}

/// The K- or I-type solution pair at λ = 1 with unit coefficient.
pub fn analytic_pair(kind: PairKind, mu: f64) -> Result<DensityPair> {
    let p = DeformationParams::unit(mu)?;
    let (e, o, coords) = match kind {
        PairKind::K => (
            DensityKind::EvenK,
            DensityKind::OddK,
            BasisCoords {
                k_coeff: 1.0,
                i_coeff: 0.0,
            },
        ),
        PairKind::I => (
            DensityKind::EvenI,
            DensityKind::OddI,
            BasisCoords {
                k_coeff: 0.0,
                i_coeff: 1.0,
            },
        ),
    };
    Ok(DensityPair {
        even: RadialDensity::basis(e, p)?,
        odd: RadialDensity::basis(o, p)?,
        coords: Some(coords),
    })
}

/// Residuals of the two first-order equations at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeResidual {
    pub r: f64,
    /// ν_o + ν_e'/(2r) − (2μ/r²)ν_e
    pub res1: f64,
    /// ν_e + ν_o'/(2r)
    pub res2: f64,
    /// |ν_e| + |ν_o|
    pub scale: f64,
}

impl OdeResidual {
    pub fn relative(&self) -> f64 {
        relative(self.res1.abs().max(self.res2.abs()), self.scale)
    }
}

/// A scalar equation residual with the sum of its term magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    fn from_terms(terms: &[f64]) -> Self {
        Self {
            value: terms.iter().sum(),
            scale: terms.iter().map(|t| t.abs()).sum(),
        }
    }

    pub fn relative(&self) -> f64 {
        relative(self.value.abs(), self.scale)
    }
}

fn relative(value: f64, scale: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        value / scale
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive, got r = {r}")))
    }
}

pub fn coupled_residual(pair: &DensityPair, mu: f64, r: f64) -> Result<OdeResidual> {
    check_radius(r)?;
    let (ve, dve) = pair.even.eval_with_deriv(r)?;
    let (vo, dvo) = pair.odd.eval_with_deriv(r)?;
    let res1 = (vo + dve / (2.0 * r)) - (2.0 * mu / (r * r)) * ve;
    let res2 = ve + dvo / (2.0 * r);
    Ok(OdeResidual {
        r,
        res1,
        res2,
        scale: ve.abs() + vo.abs(),
    })
}

/// Parity of a density component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Left-hand side of the second-order equation for one component:
///
/// ```text
/// even: ν'' − ((1+4μ)/r)ν' + (8μ/r² − 4r²)ν
/// odd:  ν'' − ((1+4μ)/r)ν' − 4r²ν
/// ```
///
/// ν'' is a centered difference of the analytic ν'.
pub fn decoupled_residual(parity: Parity, f: &RadialDensity, mu: f64, r: f64) -> Result<Residual> {
    check_radius(r)?;
    let h = (1e-5 * r.max(1.0)).min(0.5 * r);
    let (v, dv) = f.eval_with_deriv(r)?;
    let d2v = (f.deriv(r + h)? - f.deriv(r - h)?) / (2.0 * h);
    let potential = match parity {
        Parity::Even => 8.0 * mu / (r * r) - 4.0 * r * r,
        Parity::Odd => -4.0 * r * r,
    };
    Ok(Residual::from_terms(&[
        d2v,
        -((1.0 + 4.0 * mu) / r) * dv,
        potential * v,
    ]))
}

/// Modified Bessel function family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BesselKind {
    I,
    K,
}

/// u'' + u'/x − (1 + ν²/x²)u for given values of u and its derivatives.
pub fn modified_bessel_operator(nu: f64, x: f64, u: f64, du: f64, d2u: f64) -> Residual {
    Residual::from_terms(&[d2u, du / x, -(1.0 + nu * nu / (x * x)) * u])
}

/// The modified Bessel equation applied to I_ν or K_ν.
pub fn modified_bessel_residual(nu: RealOrder, u: BesselKind, x: f64) -> Result<Residual> {
    let nu = nu.value();
    let (v, dv, d2v) = match u {
        BesselKind::I => (bessel_i(nu, x)?, bessel_i_prime(nu, x)?, bessel_i_second(nu, x)?),
        BesselKind::K => (bessel_k(nu, x)?, bessel_k_prime(nu, x)?, bessel_k_second(nu, x)?),
    };
    Ok(modified_bessel_operator(nu, x, v, dv, d2v))
}

/// The substitution ν = r^α φ(r²) with α = 2μ+1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChangeOfVariable {
    pub alpha: f64,
    pub even_order: f64,
    pub odd_order: f64,
    /// α² − 2α − 4αμ + 8μ
    pub even_const: f64,
    /// α² − 2α − 4αμ
    pub odd_const: f64,
}

impl ChangeOfVariable {
    /// −4(μ−1/2)², the closed form of `even_const`.
    pub fn even_const_closed(&self) -> f64 {
        -4.0 * self.even_order * self.even_order
    }

    /// −4(μ+1/2)², the closed form of `odd_const`.
    pub fn odd_const_closed(&self) -> f64 {
        -4.0 * self.odd_order * self.odd_order
    }

    /// Whether both constants equal their closed forms bit for bit.
    pub fn is_exact(&self) -> bool {
        self.even_const == self.even_const_closed() && self.odd_const == self.odd_const_closed()
    }
}

pub fn change_of_variable_check(mu: f64) -> ChangeOfVariable {
    let alpha = 2.0 * mu + 1.0;
    let base = alpha * alpha - 2.0 * alpha - 4.0 * alpha * mu;
    ChangeOfVariable {
        alpha,
        even_order: mu - 0.5,
        odd_order: mu + 0.5,
        even_const: base + 8.0 * mu,
        odd_const: base,
    }
}

/// One accepted step of [`integrate_coupled`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub r: f64,
    pub even: f64,
    pub odd: f64,
}

/// Numerical solution of the coupled system on [r0, r_end].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub mu: f64,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn last(&self) -> TrajectoryPoint {
        *self.points.last().expect("a trajectory has at least its initial point")
    }

    /// max over points and components of |numerical − reference| / |reference|.
    pub fn max_relative_deviation(&self, reference: &DensityPair) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in &self.points {
            let (e, o) = reference.eval(p.r)?;
            worst = worst
                .max(relative((p.even - e).abs(), e.abs()))
                .max(relative((p.odd - o).abs(), o.abs()));
        }
        Ok(worst)
    }
}

/// Integrates ν_e' = (4μ/r)ν_e − 2rν_o, ν_o' = −2rν_e from r0 to r_end.
///
/// Dormand-Prince 5(4); each step keeps the local error below `tol` times
/// the size of the solution.
pub fn integrate_coupled(mu: f64, r0: f64, ve0: f64, vo0: f64, r_end: f64, tol: f64) -> Result<Trajectory> {
    DeformationParams::unit(mu)?;
    if !(r0 > 0.0) {
        return Err(Error::Domain(format!("start radius must be positive, got r0 = {r0}")));
    }
    if !(r0 < r_end && r_end <= 4.0) {
        return Err(Error::Domain(format!(
            "need r0 < r_end <= 4, got r0 = {r0}, r_end = {r_end}"
        )));
    }
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(Error::Domain(format!("tol must lie in [1e-12, 1e-4], got {tol}")));
    }
    if !(ve0.is_finite() && vo0.is_finite()) {
        return Err(Error::Domain("initial values must be finite".into()));
    }
    let rhs = |r: f64, y: &[f64; 2]| [(4.0 * mu / r) * y[0] - 2.0 * r * y[1], -2.0 * r * y[0]];
    let points = dopri::integrate(rhs, r0, [ve0, vo0], r_end, tol)?
        .into_iter()
        .map(|(r, y)| TrajectoryPoint {
            r,
            even: y[0],
            odd: y[1],
        })
        .collect();
    Ok(Trajectory { mu, points })
}

/// Outcome of [`classify_tail`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TailClass {
    Integrable,
    Divergent,
}

const TAIL_MAX_DOUBLINGS: usize = 12;

/// Decides whether ∫_1^R |ν_e| r dr and ∫_1^R |ν_o| r dr settle as R doubles.
///
/// Integrable once a doubling adds less than the quadrature tolerance to
/// both; divergent when either more than doubles across one doubling or
/// overflows. Neither within the doubling budget is `Inconclusive`.
pub fn classify_tail(pair: &DensityPair, q: &QuadratureSpec) -> Result<TailClass> {
    q.validate()?;
    let components = [&pair.even, &pair.odd];
    let segment = |d: &RadialDensity, a: f64, b: f64| -> Result<Option<f64>> {
        match integrate_interval(|r| Ok(d.eval(r)?.abs() * r), a, b, q) {
            Ok(est) => Ok(Some(est.value)),
            Err(Error::Range(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };

    let mut totals = [0.0; 2];
    for (t, d) in totals.iter_mut().zip(components) {
        match segment(d, 1.0, 2.0)? {
            Some(v) => *t = v,
            None => return Ok(TailClass::Divergent),
        }
    }

    let mut hi = 2.0;
    for _ in 0..TAIL_MAX_DOUBLINGS {
        let mut settled = true;
        for (t, d) in totals.iter_mut().zip(components) {
            let Some(seg) = segment(d, hi, 2.0 * hi)? else {
                return Ok(TailClass::Divergent);
            };
            let next = *t + seg;
            if *t > 0.0 && next > 2.0 * *t {
                return Ok(TailClass::Divergent);
            }
            settled &= seg <= q.abs_tol.max(q.rel_tol * next);
            *t = next;
        }
        hi *= 2.0;
        if settled {
            return Ok(TailClass::Integrable);
        }
    }
    Err(Error::Inconclusive(format!(
        "tail integrals still changing at R = {hi}: even {:e}, odd {:e}",
        totals[0], totals[1]
    )))
}

/// res1 − res2 of [`coupled_residual`] for the pair (f, f).
///
/// Analytically this is −2μ f(r)/r², so f = ν_e = ν_o can solve the system
/// only when μ = 0.
pub fn equal_density_gap(f: &RadialDensity, mu: f64, r: f64) -> Result<f64> {
    let res = coupled_residual(&DensityPair::new(f.clone(), f.clone()), mu, r)?;
    Ok(res.res1 - res.res2)
}
