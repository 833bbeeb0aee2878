//! Γ, I_ν and K_ν for real order, with derivatives.
//!
//! cargo run --example special_functions

use musb::specfun::{bessel_i, bessel_i_prime, bessel_k, bessel_k_prime, gamma};

fn main() -> musb::Result<()> {
    println!(
        "Γ(0.5) = {:.15}  (√π = {:.15})",
        gamma(0.5)?,
        std::f64::consts::PI.sqrt()
    );
    println!("Γ(10)  = {}", gamma(10.0)?);

    println!("\n{:>6} {:>6} {:>22} {:>22}", "nu", "x", "I_nu(x)", "K_nu(x)");
    for nu in [-0.5, 0.0, 0.3, 1.5, 4.0] {
        for x in [0.1, 1.0, 10.0] {
            println!(
                "{nu:>6} {x:>6} {:>22.15e} {:>22.15e}",
                bessel_i(nu, x)?,
                bessel_k(nu, x)?
            );
        }
    }

    // K is even in the order, exactly.
    assert_eq!(bessel_k(-0.7, 2.0)?, bessel_k(0.7, 2.0)?);

    // Wronskian: I_ν K_{ν+1} + I_{ν+1} K_ν = 1/x.
    let (nu, x) = (0.8, 3.0);
    let w = bessel_i(nu, x)? * bessel_k(nu + 1.0, x)? + bessel_i(nu + 1.0, x)? * bessel_k(nu, x)?;
    println!("\nWronskian at nu={nu}, x={x}: {w:.15} vs 1/x = {:.15}", 1.0 / x);

    println!(
        "I'_0(1) = {:.15}, K'_0(1) = {:.15}",
        bessel_i_prime(0.0, 1.0)?,
        bessel_k_prime(0.0, 1.0)?
    );

    match bessel_k(0.5, -1.0) {
        Err(e) => println!("negative argument: {e}"),
        Ok(v) => println!("unexpected value {v}"),
    }
    Ok(())
}
