//! Numerical model of the μ-deformed Segal-Bargmann space.
//!
//! The space is built from holomorphic functions on the complex plane with
//! an inner product that pairs even parts against one radial density and odd
//! parts against another. This crate evaluates both densities (Macdonald
//! functions of orders μ ∓ 1/2), implements the μ-deformed creation and
//! annihilation operators on polynomials, checks that they are mutually
//! adjoint, and verifies that the two densities solve the first-order ODE
//! system which makes that adjointness hold.
//!
//! Modules:
//!
//! - [`specfun`]: Γ, I_ν, K_ν for real order with derivatives.
//! - [`measures`]: the even/odd densities, the Gaussian reference, masses and normalization.
//! - [`odesys`]: the coupled density system, its decoupled forms, analytic solution pairs,
//!   a Runge-Kutta cross-check and tail classification.
//! - [`holo`]: polynomials with parity split and the ladder operators.
//! - [`pairing`]: radial quadrature, the two-measure inner product and adjointness gaps.
//! - [`verify`] and [`cli`]: the verification report and the `musb` command line front end.
//!
//! See the `examples/` directory of this crate for one runnable program per capability.

// Domain guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod holo;
pub mod measures;
pub mod odesys;
pub mod pairing;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use holo::HoloPoly;
pub use measures::{DeformationParams, DensityKind, RadialDensity};
pub use odesys::{DensityPair, PairKind};
pub use pairing::QuadratureSpec;
