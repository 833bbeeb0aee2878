//! The coupled density system: analytic solutions, residuals, numerical
//! integration, tail behaviour and the equal-density obstruction.
//!
//! cargo run --example ode_system

use musb::odesys::{
    analytic_pair, change_of_variable_check, classify_tail, coupled_residual, decoupled_residual, equal_density_gap,
    integrate_coupled, DensityPair, PairKind, Parity,
};
use musb::{QuadratureSpec, RadialDensity};

fn main() -> musb::Result<()> {
    let mu = 0.8;
    let k = analytic_pair(PairKind::K, mu)?;
    let i = analytic_pair(PairKind::I, mu)?;

    println!("coupled residuals at mu = {mu}:");
    for r in [0.3, 1.1, 2.4] {
        println!(
            "  r = {r}: K {:.2e}, I {:.2e}",
            coupled_residual(&k, mu, r)?.relative(),
            coupled_residual(&i, mu, r)?.relative()
        );
    }
    let mixed = DensityPair::new(k.even.clone(), i.odd.clone());
    println!(
        "  mismatched pair at r = 1: {:.2e}",
        coupled_residual(&mixed, mu, 1.0)?.relative()
    );

    let r = 1.4;
    println!(
        "decoupled residuals at r = {r}: even {:.2e}, odd {:.2e}",
        decoupled_residual(Parity::Even, &k.even, mu, r)?.relative(),
        decoupled_residual(Parity::Odd, &k.odd, mu, r)?.relative()
    );

    let c = change_of_variable_check(mu);
    println!(
        "α = {}, constants {} / {} (orders {} / {})",
        c.alpha, c.even_const, c.odd_const, c.even_order, c.odd_order
    );

    // Start on the K-pair at r = 0.5 and integrate outward.
    let (e0, o0) = k.eval(0.5)?;
    let traj = integrate_coupled(mu, 0.5, e0, o0, 2.0, 1e-12)?;
    let last = traj.last();
    println!(
        "RK45: {} steps, nu_e(2) = {:.12e} (analytic {:.12e}), max rel. deviation {:.2e}",
        traj.points.len(),
        last.even,
        k.even.eval(2.0)?,
        traj.max_relative_deviation(&k)?
    );

    let q = QuadratureSpec::default();
    println!("tails: K {:?}, I {:?}", classify_tail(&k, &q)?, classify_tail(&i, &q)?);

    let g = RadialDensity::gaussian();
    for mu in [0.0, 0.5, 1.0] {
        println!(
            "equal-density gap, Gaussian, mu = {mu}, r = 1: {:+.10}",
            equal_density_gap(&g, mu, 1.0)?
        );
    }
    Ok(())
}
