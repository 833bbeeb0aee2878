//! Polynomials standing in for holomorphic functions on the plane, with the
//! parity operator and the μ-deformed ladder operators.
//!
//! On monomials the annihilation operator acts as
//! `a_μ z^n = [n]_μ z^{n-1}` with the μ-deformed integer
//! `[n]_μ = n + 2μ` for odd `n` and `[n]_μ = n` for even `n`; the reflection
//! term (μ/z)(f(z) - f(-z)) is applied as this coefficient rule and never as a
//! pointwise division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// `[n]_μ`.
pub fn mu_number(n: usize, mu: f64) -> f64 {
    if n % 2 == 1 {
        n as f64 + 2.0 * mu
    } else {
        n as f64
    }
}

/// `[1]_μ [2]_μ ⋯ [n]_μ`, with the empty product equal to 1.
pub fn mu_factorial(n: usize, mu: f64) -> f64 {
    (1..=n).map(|k| mu_number(k, mu)).product()
}

/// A polynomial Σ c_k z^k with complex coefficients, kept in canonical form
/// (no trailing zero coefficients).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HoloPoly {
    coeffs: Vec<Complex64>,
}

impl HoloPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · z^n`
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `z^n`
    pub fn z_pow(n: usize) -> Self {
        Self::monomial(n, Complex64::new(1.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.norm_sqr() == 0.0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.norm_sqr() == 0.0)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect())
    }

    /// `(f_e, f_o)` with `f_e = (f + Jf)/2` and `f_o = (f - Jf)/2`.
    pub fn parity_split(&self) -> (Self, Self) {
        let zero = Complex64::new(0.0, 0.0);
        let even = self.map_indexed(|k, c| if k % 2 == 0 { c } else { zero });
        let odd = self.map_indexed(|k, c| if k % 2 == 1 { c } else { zero });
        (even, odd)
    }

    /// The parity operator, `(Jf)(z) = f(-z)`.
    pub fn parity_op(&self) -> Self {
        self.map_indexed(|k, c| if k % 2 == 1 { -c } else { c })
    }

    /// Creation operator `a*_μ f(z) = z f(z)`; independent of μ.
    pub fn creation(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Annihilation operator `a_μ f = f' + (μ/z)(f(z) - f(-z))`, a complex
    /// Dunkl operator.
    pub fn annihilation(&self, mu: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * mu_number(n, mu))
                .collect(),
        )
    }

    /// `[a_μ, a*_μ] f = a_μ(a*_μ f) - a*_μ(a_μ f)`, which equals `f + 2μ Jf`.
    pub fn commutator_action(&self, mu: f64) -> Self {
        &self.creation().annihilation(mu) - &self.annihilation(mu).creation()
    }
}

impl Add for &HoloPoly {
    type Output = HoloPoly;

    fn add(self, rhs: &HoloPoly) -> HoloPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HoloPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &HoloPoly {
    type Output = HoloPoly;

    fn sub(self, rhs: &HoloPoly) -> HoloPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HoloPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &HoloPoly {
    type Output = HoloPoly;

    fn neg(self) -> HoloPoly {
        HoloPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<Complex64> for &HoloPoly {
    type Output = HoloPoly;

    fn mul(self, rhs: Complex64) -> HoloPoly {
        HoloPoly::new(self.coeffs.iter().map(|c| c * rhs).collect())
    }
}

impl Mul<f64> for &HoloPoly {
    type Output = HoloPoly;

    fn mul(self, rhs: f64) -> HoloPoly {
        HoloPoly::new(self.coeffs.iter().map(|c| c * rhs).collect())
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_coeff_diff(a: &HoloPoly, b: &HoloPoly) -> f64 {
        let n = a.coeffs().len().max(b.coeffs().len());
        (0..n).map(|k| (a.coeff(k) - b.coeff(k)).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = HoloPoly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(HoloPoly::from_real(&[0.0, 0.0]).degree(), None);
        assert!(HoloPoly::zero().is_zero());
    }

    #[test]
    fn parity_split_examples() {
        let (e, o) = HoloPoly::from_real(&[1.0, 1.0]).parity_split();
        assert_eq!(e, HoloPoly::from_real(&[1.0]));
        assert_eq!(o, HoloPoly::z_pow(1));

        let p = &HoloPoly::z_pow(2) + &HoloPoly::monomial(5, c(3.0, 0.0));
        let (e, o) = p.parity_split();
        assert_eq!(e, HoloPoly::z_pow(2));
        assert_eq!(o, HoloPoly::monomial(5, c(3.0, 0.0)));

        let even = HoloPoly::from_real(&[2.0, 0.0, -1.0, 0.0, 4.0]);
        assert_eq!(even.parity_split(), (even.clone(), HoloPoly::zero()));
    }

    #[test]
    fn parity_operator_examples() {
        assert_eq!(HoloPoly::z_pow(1).parity_op(), -&HoloPoly::z_pow(1));
        assert_eq!(HoloPoly::z_pow(2).parity_op(), HoloPoly::z_pow(2));
    }

    #[test]
    fn creation_shifts_up() {
        for n in 0..3 {
            assert_eq!(HoloPoly::z_pow(n).creation(), HoloPoly::z_pow(n + 1));
        }
        assert_eq!(HoloPoly::zero().creation(), HoloPoly::zero());
        assert_eq!(
            HoloPoly::monomial(3, c(2.0, 1.0)).creation(),
            HoloPoly::monomial(4, c(2.0, 1.0))
        );
    }

    #[test]
    fn annihilation_on_monomials() {
        for &mu in &[-0.4, 0.0, 0.7, 2.5] {
            // a_μ z² = 2z regardless of μ; the reflection term vanishes on even input.
            assert_eq!(HoloPoly::z_pow(2).annihilation(mu), HoloPoly::monomial(1, c(2.0, 0.0)));
            assert_eq!(
                HoloPoly::z_pow(3).annihilation(mu),
                HoloPoly::monomial(2, c(3.0 + 2.0 * mu, 0.0))
            );
            assert_eq!(HoloPoly::z_pow(0).annihilation(mu), HoloPoly::zero());
        }
    }

    #[test]
    fn annihilation_matches_pointwise_dunkl_formula() {
        // f' + (μ/z)(f(z) - f(-z)) evaluated at a point away from the origin.
        let f = HoloPoly::new(vec![c(0.3, -1.0), c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 1.5), c(0.7, 0.2)]);
        let mu = 0.37;
        let z = c(0.8, -0.6);
        let deriv = HoloPoly::new(
            f.coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        );
        let pointwise = deriv.eval(z) + (f.eval(z) - f.eval(-z)) * mu / z;
        assert!((f.annihilation(mu).eval(z) - pointwise).norm() < 1e-14);
    }

    #[test]
    fn commutator_on_monomials() {
        let mu = 0.8;
        for k in 0..5 {
            let even = HoloPoly::z_pow(2 * k).commutator_action(mu);
            assert!(max_coeff_diff(&even, &HoloPoly::monomial(2 * k, c(1.0 + 2.0 * mu, 0.0))) < 1e-14);
            let odd = HoloPoly::z_pow(2 * k + 1).commutator_action(mu);
            assert!(max_coeff_diff(&odd, &HoloPoly::monomial(2 * k + 1, c(1.0 - 2.0 * mu, 0.0))) < 1e-14);
        }
    }

    #[test]
    fn mu_numbers_and_factorials() {
        assert_eq!(mu_number(3, 0.5), 4.0);
        assert_eq!(mu_number(4, 0.5), 4.0);
        let mu = 0.3;
        assert!((mu_factorial(3, mu) - (1.0 + 2.0 * mu) * 2.0 * (3.0 + 2.0 * mu)).abs() < 1e-15);
        assert_eq!(mu_factorial(0, mu), 1.0);
        let mut fact = 1.0;
        for n in 1..=8 {
            fact *= n as f64;
            assert_eq!(mu_factorial(n, 0.0), fact);
        }
        for n in 1..40 {
            assert!(mu_number(n, -0.499) > 0.0);
        }
    }

    fn poly_strategy() -> impl Strategy<Value = HoloPoly> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 0..=13)
            .prop_map(|v| HoloPoly::new(v.into_iter().map(|(re, im)| c(re, im)).collect()))
    }

    proptest! {
        #[test]
        fn commutation_relation(f in poly_strategy(), mu in -0.49f64..3.0) {
            let lhs = f.commutator_action(mu);
            let rhs = &f + &(&f.parity_op() * (2.0 * mu));
            prop_assert!(max_coeff_diff(&lhs, &rhs) <= 1e-14);
        }

        #[test]
        fn parity_is_an_involution(f in poly_strategy()) {
            prop_assert_eq!(f.parity_op().parity_op(), f);
        }

        #[test]
        fn parity_split_is_a_projection_pair(f in poly_strategy()) {
            let (e, o) = f.parity_split();
            prop_assert_eq!(&(&e + &o), &f);
            prop_assert_eq!(e.parity_split(), (e.clone(), HoloPoly::zero()));
            prop_assert_eq!(o.parity_split(), (HoloPoly::zero(), o.clone()));
        }

        #[test]
        fn ladder_operators_swap_parity(f in poly_strategy(), mu in -0.49f64..3.0) {
            let (e, o) = f.parity_split();
            prop_assert!(e.annihilation(mu).is_odd());
            prop_assert!(o.annihilation(mu).is_even());
            prop_assert!(e.creation().is_odd());
            prop_assert!(o.creation().is_even());
        }
    }
}
