//! Polynomials, parity and the deformed creation/annihilation operators.
//!
//! cargo run --example ladder_operators

use musb::holo::{mu_factorial, mu_number};
use musb::HoloPoly;
use num_complex::Complex64;

fn main() {
    let mu = 0.7;
    let f = HoloPoly::new(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(3.0, 1.0),
    ]);
    println!("f        = {f}");
    let (even, odd) = f.parity_split();
    println!("even     = {even}");
    println!("odd      = {odd}");
    println!("J f      = {}", f.parity_op());
    println!("a* f     = {}", f.creation());
    println!("a f      = {}", f.annihilation(mu));

    // [a, a*] f = f + 2μ J f
    let lhs = f.commutator_action(mu);
    let rhs = &f + &(&f.parity_op() * (2.0 * mu));
    println!("[a,a*] f = {lhs}");
    println!("f+2μJf   = {rhs}");

    println!("\n{:>3} {:>8} {:>12}", "n", "[n]_mu", "gamma_mu(n)");
    for n in 0..=8 {
        println!("{n:>3} {:>8.3} {:>12.4}", mu_number(n, mu), mu_factorial(n, mu));
    }
}
