//! The even and odd densities, their masses and the μ = 0 Gaussian limit.
//!
//! cargo run --example densities

use musb::measures::{density_even, density_odd, gaussian_density, normalize_pair, total_mass};
use musb::odesys::{analytic_pair, PairKind};
use musb::{DeformationParams, QuadratureSpec, RadialDensity};

fn main() -> musb::Result<()> {
    let q = QuadratureSpec::default();

    println!("{:>5} {:>14} {:>14} {:>14}", "r", "nu_e(0.8)", "nu_o(0.8)", "gaussian");
    let p = DeformationParams::unit(0.8)?;
    for r in [0.1, 0.5, 1.0, 1.5, 2.0, 3.0] {
        println!(
            "{r:>5} {:>14.8e} {:>14.8e} {:>14.8e}",
            density_even(p, r)?,
            density_odd(p, r)?,
            gaussian_density(r)
        );
    }

    println!("\nplane masses:");
    for mu in [-0.4, 0.0, 0.5, 1.0, 2.5] {
        let p = DeformationParams::unit(mu)?;
        let even = total_mass(&RadialDensity::even_measure(p)?, &q)?;
        let odd = total_mass(&RadialDensity::odd_measure(p)?, &q)?;
        println!("  mu = {mu:>4}: even {even:.12}, odd {odd:.12}");
    }

    // Scale λ: ν_{e,λ}(r) = λ ν_{e,1}(√λ r).
    let scaled = DeformationParams::new(0.8, 2.0)?;
    println!(
        "\nλ = 2: nu_e(1) = {:.12e}, 2·nu_e(√2) at λ=1 = {:.12e}",
        density_even(scaled, 1.0)?,
        2.0 * density_even(p, 2f64.sqrt())?
    );

    // Rescale an unnormalized K-pair so its even part is a probability density.
    let pair = normalize_pair(&analytic_pair(PairKind::K, 0.8)?, &q)?;
    println!("normalized K-pair factor at mu = 0.8: {:.12}", pair.even.scale());

    if let Err(e) = DeformationParams::unit(-0.5) {
        println!("\n{e}");
    }
    Ok(())
}
