//! Kernels for the modified Bessel functions of real order.
//!
//! K_ν is reduced to an order μ ∈ [-1/2, 1/2) and evaluated with Temme's
//! series for x ≤ 2 or Steed's continued fraction (CF2) for x > 2; the
//! requested order is then reached by forward recurrence, which is stable for
//! K. I_ν uses the ascending power series up to [`I_SERIES_MAX_X`] and the
//! large-argument Hankel expansion beyond it.

use std::f64::consts::PI;

use super::gamma::{ln_gamma, rgamma};

const MAX_ITER: usize = 10_000;

/// Crossover between the ascending series and the asymptotic expansion for I_ν.
pub(crate) const I_SERIES_MAX_X: f64 = 20.0;

/// Crossover between Temme's series and CF2 for K_ν.
const K_TEMME_MAX_X: f64 = 2.0;

// Chebyshev fits of Temme's auxiliary gamma functions on |μ| ≤ 1/2
// (coefficients from GSL's bessel_temme.c).
#[allow(clippy::excessive_precision)]
const G1_CHEB: [f64; 14] = [
    -1.145_164_083_662_683_117_868_981_528_67,
    0.006_360_853_113_470_842_381_229_554_95,
    0.001_862_451_930_072_068_489_346_436_57,
    0.000_152_833_085_873_453_507_081_227_824,
    0.000_017_017_464_011_802_038_795_324_732,
    -6.459_750_292_334_725_435_466_832_645_1e-7,
    -5.181_984_843_251_938_089_410_431_296_8e-8,
    4.518_909_289_485_818_305_112_318_079_7e-10,
    3.243_322_737_102_087_304_366_625_918_0e-11,
    6.830_943_402_494_752_287_543_240_082_8e-13,
    2.835_350_275_517_210_151_311_962_813_0e-14,
    -7.988_390_576_932_359_287_563_808_754_1e-16,
    -3.372_667_730_077_194_983_334_121_345_7e-17,
    -3.658_633_480_921_052_074_405_443_710_4e-20,
];

#[allow(clippy::excessive_precision)]
const G2_CHEB: [f64; 15] = [
    1.882_645_524_949_671_835_019_616_975_350,
    -0.077_490_658_396_167_518_329_547_945_212,
    -0.018_256_714_847_324_929_419_579_340_950,
    0.000_633_803_020_907_489_579_592_397_173_1,
    0.000_076_229_054_350_872_902_119_446_117_5,
    -9.550_164_756_172_044_351_985_399_352_6e-7,
    -8.892_726_810_788_635_191_243_151_295_5e-8,
    -1.952_133_477_231_961_374_051_188_013_2e-9,
    -9.400_305_273_588_516_211_176_957_977_1e-11,
    4.687_513_384_953_239_317_929_087_910_1e-12,
    2.265_853_574_692_575_958_244_754_514_5e-13,
    -1.172_550_969_848_801_511_187_873_525_1e-15,
    -7.044_133_820_024_522_253_084_315_587_7e-17,
    -2.437_787_831_010_769_365_065_974_022_8e-18,
    -7.522_524_321_825_390_172_716_467_501_1e-20,
];

/// Clenshaw evaluation of a Chebyshev series on [-1, 1] with the c0/2 convention.
fn cheb_eval(coeffs: &[f64], y: f64) -> f64 {
    let y2 = 2.0 * y;
    let (mut d, mut dd) = (0.0, 0.0);
    for &c in coeffs[1..].iter().rev() {
        let tmp = d;
        d = y2 * d - dd + c;
        dd = tmp;
    }
    y * d - dd + 0.5 * coeffs[0]
}

/// Temme's Γ1(μ), Γ2(μ), Γ(1+μ), Γ(1-μ) for |μ| ≤ 1/2.
fn temme_gamma(mu: f64) -> (f64, f64, f64, f64) {
    let y = 4.0 * mu.abs() - 1.0;
    let g1 = cheb_eval(&G1_CHEB, y);
    let g2 = cheb_eval(&G2_CHEB, y);
    let gamma_1pmu = 1.0 / (g2 - mu * g1);
    let gamma_1mmu = 1.0 / (g2 + mu * g1);
    (g1, g2, gamma_1pmu, gamma_1mmu)
}

/// (K_μ(x), K_{μ+1}(x)) for |μ| ≤ 1/2 and 0 < x ≤ 2.
fn k_temme(mu: f64, x: f64) -> (f64, f64) {
    let half_x = 0.5 * x;
    let ln_half_x = half_x.ln();
    let half_x_mu = (mu * ln_half_x).exp();
    let pi_mu = PI * mu;
    let sigma = -mu * ln_half_x;
    let sinrat = if pi_mu.abs() < f64::EPSILON {
        1.0
    } else {
        pi_mu / pi_mu.sin()
    };
    let sinhrat = if sigma.abs() < f64::EPSILON {
        1.0
    } else {
        sigma.sinh() / sigma
    };
    let (g1, g2, gamma_1pmu, gamma_1mmu) = temme_gamma(mu);

    let mut fk = sinrat * (sigma.cosh() * g1 - sinhrat * ln_half_x * g2);
    let mut pk = 0.5 / half_x_mu * gamma_1pmu;
    let mut qk = 0.5 * half_x_mu * gamma_1mmu;
    let mut ck = 1.0;
    let mut sum0 = fk;
    let mut sum1 = pk;
    for k in 1..MAX_ITER {
        let k = k as f64;
        fk = (k * fk + pk + qk) / (k * k - mu * mu);
        ck *= half_x * half_x / k;
        pk /= k - mu;
        qk /= k + mu;
        let hk = pk - k * fk;
        let del0 = ck * fk;
        sum0 += del0;
        sum1 += ck * hk;
        if del0.abs() < 0.5 * sum0.abs() * f64::EPSILON {
            break;
        }
    }
    (sum0, sum1 * 2.0 / x)
}

/// (e^x K_μ(x), e^x K_{μ+1}(x)) for |μ| ≤ 1/2 and x > 2, by Steed's method.
fn k_steed_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mut bi = 2.0 * (1.0 + x);
    let mut di = 1.0 / bi;
    let mut delhi = di;
    let mut hi = di;
    let mut qi = 0.0;
    let mut qip1 = 1.0;
    let a1 = mu * mu - 0.25;
    let mut ai = a1;
    let mut ci = -ai;
    let mut bqi = -ai;
    let mut s = 1.0 + bqi * delhi;

    for i in 2..MAX_ITER {
        ai -= 2.0 * (i - 1) as f64;
        ci = -ai * ci / i as f64;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        bqi += ci * qip1;
        bi += 2.0;
        di = 1.0 / (bi + ai * di);
        delhi *= bi * di - 1.0;
        hi += delhi;
        let dels = bqi * delhi;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    hi *= -a1;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mup1 = k_mu * (mu + x + 0.5 - hi) / x;
    (k_mu, k_mup1)
}

/// (K_ν(x), K_{ν+1}(x)) for ν ≥ 0, x > 0. May overflow to ∞ for tiny x or
/// underflow to 0 for huge x; callers check finiteness.
pub(crate) fn k_pair(nu: f64, x: f64) -> (f64, f64) {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let steps = (nu + 0.5).floor();
    let mu = nu - steps;
    let (k_mu, k_mup1, scaled) = if x <= K_TEMME_MAX_X {
        let (a, b) = k_temme(mu, x);
        (a, b, false)
    } else {
        let (a, b) = k_steed_scaled(mu, x);
        (a, b, true)
    };

    let mut k_cur = k_mu;
    let mut k_next = k_mup1;
    for j in 1..=steps as usize {
        let k_prev = k_cur;
        k_cur = k_next;
        k_next = k_prev + 2.0 * (mu + j as f64) / x * k_cur;
    }
    if scaled {
        let damp = (-x).exp();
        (k_cur * damp, k_next * damp)
    } else {
        (k_cur, k_next)
    }
}

/// Ascending series Σ (x/2)^{2k+ν} / (k! Γ(k+ν+1)) for any real ν.
pub(crate) fn i_series(nu: f64, x: f64) -> f64 {
    // I_{-n} = I_n for integer n; the recurrence below divides by k + ν.
    let nu = if nu < 0.0 && nu == nu.floor() { -nu } else { nu };
    let half_x = 0.5 * x;
    let quarter_x2 = half_x * half_x;
    let mut term = if nu + 1.0 > 0.0 {
        (nu * half_x.ln() - ln_gamma(nu + 1.0)).exp()
    } else {
        half_x.powf(nu) * rgamma(nu + 1.0)
    };
    let mut sum = term;
    for k in 1..MAX_ITER {
        let k = k as f64;
        term *= quarter_x2 / (k * (k + nu));
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() && k > half_x {
            break;
        }
    }
    sum
}

/// Large-argument expansion e^x/√(2πx) Σ (-1)^k a_k(ν)/x^k, truncated at the
/// smallest term. Relative error is of order e^{-2x}.
pub(crate) fn i_asymptotic(nu: f64, x: f64) -> f64 {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        let odd = (2 * k - 1) as f64;
        let next = -term * (four_nu2 - odd * odd) / (8.0 * k as f64 * x);
        if next == 0.0 || next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    (x - 0.5 * (2.0 * PI * x).ln()).exp() * sum
}

/// I_ν(x) for any real ν and x > 0 without domain checks.
pub(crate) fn i_raw(nu: f64, x: f64) -> f64 {
    if x <= I_SERIES_MAX_X {
        i_series(nu, x)
    } else {
        i_asymptotic(nu, x)
    }
}

/// K_ν(x) for any real ν and x > 0 without domain checks.
pub(crate) fn k_raw(nu: f64, x: f64) -> f64 {
    k_pair(nu.abs(), x).0
}
