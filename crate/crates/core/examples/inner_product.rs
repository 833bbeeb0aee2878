//! The two-measure inner product, monomial norms and the adjointness gap.
//!
//! cargo run --example inner_product

use musb::holo::mu_factorial;
use musb::odesys::{analytic_pair, PairKind};
use musb::pairing::{adjointness_gap, adjointness_gap_with, inner_product, monomial_norm_sq, radial_integral};
use musb::{DeformationParams, HoloPoly, QuadratureSpec};

fn main() -> musb::Result<()> {
    let q = QuadratureSpec::default();
    let p = DeformationParams::unit(0.7)?;

    // Open-endpoint quadrature handles the r^{-0.8} singularity at 0.
    let v = radial_integral(|r| Ok(r.powf(-0.8) * (-r).exp()), &q)?;
    println!("∫ r^-0.8 e^-r r dr = {v:.14}  (Γ(1.2) = 0.91816874239976)");

    println!("\n{:>3} {:>20} {:>20}", "n", "‖z^n‖² quadrature", "γ_μ(n)");
    for n in 0..=10 {
        println!(
            "{n:>3} {:>20.12} {:>20.12}",
            monomial_norm_sq(n, p, &q)?,
            mu_factorial(n, p.mu())
        );
    }

    let z = |n| HoloPoly::z_pow(n);
    println!("\n⟨z, z²⟩ = {}", inner_product(&z(1), &z(2), p, &q)?);
    for (m, n) in [(2, 3), (3, 4), (5, 6)] {
        println!(
            "gap(z^{m}, z^{n}) = {:.3e}",
            adjointness_gap(&z(m), &z(n), p, &q)?.norm()
        );
    }

    // With the growing solution pair the pairing does not exist.
    let i = analytic_pair(PairKind::I, 0.7)?;
    match adjointness_gap_with(&i, 1.0, 0.7, &z(2), &z(3), &q) {
        Err(e) => println!("I-pair: {e}"),
        Ok(g) => println!("I-pair unexpectedly gave {g}"),
    }
    Ok(())
}
