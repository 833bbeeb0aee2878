//! Dormand-Prince 5(4) with local extrapolation and a component-relative
//! error norm.
//!
//! The error of each component is measured against that component's own
//! size, with a floor tied to ‖y‖∞ and no absolute term. For a linear system
//! this makes the accepted step sequence invariant under y0 → c·y0, so the
//! trajectory scales exactly.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// Fifth- minus fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const MAX_STEPS: usize = 200_000;
const COMPONENT_FLOOR: f64 = 1e-3;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for (c, k) in terms {
            s += c * k[i];
        }
        *o += h * s;
    }
    out
}

fn norm_inf<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// max_i |e_i| / (tol · s_i), with s_i the larger of |y_i| and |y_new_i|,
/// floored at FLOOR · ‖y‖∞ so a component passing through zero does not stall
/// the step size. Every term is homogeneous of degree zero in y.
fn error_ratio<const N: usize>(e: &[f64; N], y: &[f64; N], y_new: &[f64; N], tol: f64) -> f64 {
    let floor = COMPONENT_FLOOR * norm_inf(y).max(norm_inf(y_new));
    let mut worst: f64 = 0.0;
    for i in 0..N {
        let s = y[i].abs().max(y_new[i].abs()).max(floor);
        worst = worst.max(e[i].abs() / (tol * s));
    }
    worst
}

/// Integrates y' = f(t, y) from t0 to t_end, returning every accepted point
/// including both endpoints.
pub fn integrate<const N: usize, F>(f: F, t0: f64, y0: [f64; N], t_end: f64, tol: f64) -> Result<Vec<(f64, [f64; N])>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut t = t0;
    let mut y = y0;
    let mut out = vec![(t, y)];
    if norm_inf(&y) == 0.0 {
        // The zero solution; nothing to control the error against.
        out.push((t_end, y));
        return Ok(out);
    }

    let span = t_end - t0;
    let mut h = span * tol.powf(0.2).min(0.1);
    let mut k1 = f(t, &y);

    for _ in 0..MAX_STEPS {
        if t >= t_end {
            return Ok(out);
        }
        let last = t + h >= t_end;
        let step = if last { t_end - t } else { h };
        if step <= 16.0 * f64::EPSILON * t.abs().max(span) {
            return Err(Error::Integration(format!("step size underflow at t = {t}")));
        }

        let k2 = f(t + C2 * step, &axpy(&y, step, &[(A21, &k1)]));
        let k3 = f(t + C3 * step, &axpy(&y, step, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * step, &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * step,
            &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + step,
            &axpy(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = axpy(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + step, &y_new);

        let zero = [0.0; N];
        let err_vec = axpy(
            &zero,
            step,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );
        if !y_new.iter().all(|v| v.is_finite()) {
            return Err(Error::Integration(format!("solution is not finite near t = {t}")));
        }
        let err = error_ratio(&err_vec, &y, &y_new, tol);

        if err <= 1.0 {
            t = if last { t_end } else { t + step };
            y = y_new;
            k1 = k7;
            out.push((t, y));
            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            h = step * factor;
        } else {
            h = step * (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
        }
    }
    Err(Error::Integration(format!(
        "step budget of {MAX_STEPS} exhausted at t = {t}"
    )))
}
