//! Riemann zeta values and polylogarithms Li_s(e^{-μ}) for small integer s.
//!
//! The ideal-metal part of every Matsubara term is a combination of Li₂ and
//! Li₃ at e^{-ζ}, so these are evaluated in closed form instead of by
//! quadrature.

use std::f64::consts::PI;

pub const ZETA_2: f64 = PI * PI / 6.0;
pub const ZETA_3: f64 = 1.202_056_903_159_594_2;
pub const ZETA_4: f64 = PI * PI * PI * PI / 90.0;

/// B_{2m} for m = 1..=15.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// ζ(n) for integer n ≤ 4, n ≠ 1.
fn zeta_int(n: i32) -> f64 {
    match n {
        4 => ZETA_4,
        3 => ZETA_3,
        2 => ZETA_2,
        0 => -0.5,
        1 => panic!("zeta pole at 1"),
        n if n > 4 => unreachable!("only small orders are needed"),
        n => {
            // ζ(-k) = (-1)^k B_{k+1}/(k+1); zero for even k > 0.
            let k = -n;
            if k % 2 == 0 {
                0.0
            } else {
                let m = ((k + 1) / 2) as usize;
                -BERNOULLI_EVEN[m - 1] / (k + 1) as f64
            }
        }
    }
}

/// Threshold in μ between the small-μ expansion and the direct series.
const SERIES_SWITCH: f64 = 1.0;

/// Li_s(e^{-μ}) for s ∈ {1, 2, 3, 4} and μ ≥ 0.
pub fn polylog_exp_neg(s: u32, mu: f64) -> f64 {
    assert!((1..=4).contains(&s), "polylog order {s} not supported");
    assert!(mu >= 0.0, "polylog argument must satisfy mu >= 0");
    if s == 1 {
        // Li_1(x) = -ln(1 - x)
        return -(-(-mu).exp_m1()).ln();
    }
    if mu == 0.0 {
        return zeta_int(s as i32);
    }
    if mu >= SERIES_SWITCH {
        direct_series(s, mu)
    } else {
        small_mu_expansion(s, mu)
    }
}

fn direct_series(s: u32, mu: f64) -> f64 {
    let x = (-mu).exp();
    let mut sum = 0.0;
    let mut power = 1.0;
    for n in 1..200u32 {
        power *= x;
        let term = power / f64::from(n).powi(s as i32);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Li_s(e^{w}) = w^{s-1}/(s-1)! [H_{s-1} - ln(-w)] + Σ_{k≠s-1} ζ(s-k) w^k/k!, w = -μ.
/// Converges for μ < 2π.
fn small_mu_expansion(s: u32, mu: f64) -> f64 {
    let s = s as i32;
    let w = -mu;
    let harmonic: f64 = (1..s).map(|j| 1.0 / f64::from(j)).sum();
    let mut factorial = 1.0;
    for j in 1..s {
        factorial *= f64::from(j);
    }
    let log_term = w.powi(s - 1) / factorial * (harmonic - mu.ln());

    let mut sum = 0.0;
    let mut w_pow_over_fact = 1.0; // w^k / k!
    let max_k = (s + 2 * BERNOULLI_EVEN.len() as i32 - 2).min(32);
    for k in 0..=max_k {
        if k > 0 {
            w_pow_over_fact *= w / f64::from(k);
        }
        if k == s - 1 {
            continue;
        }
        sum += zeta_int(s - k) * w_pow_over_fact;
    }
    log_term + sum
}

/// ∫_ζ^∞ y ln(1 - e^{-y}) dy = -[Li₃(e^{-ζ}) + ζ Li₂(e^{-ζ})].
pub fn ideal_inner_integral(zeta: f64) -> f64 {
    if zeta == 0.0 {
        return -ZETA_3;
    }
    -(polylog_exp_neg(3, zeta) + zeta * polylog_exp_neg(2, zeta))
}

/// ∫_ζ^∞ y²/(e^y − 1) dy = ζ² Li₁ + 2ζ Li₂ + 2 Li₃, all at e^{-ζ}.
pub fn ideal_pressure_inner_integral(zeta: f64) -> f64 {
    if zeta == 0.0 {
        return 2.0 * ZETA_3;
    }
    zeta * zeta * polylog_exp_neg(1, zeta) + 2.0 * zeta * polylog_exp_neg(2, zeta) + 2.0 * polylog_exp_neg(3, zeta)
}

/// Antiderivative of [`ideal_inner_integral`] vanishing at ∞: 2 Li₄ + ζ Li₃.
pub fn ideal_outer_antiderivative(zeta: f64) -> f64 {
    if zeta.is_infinite() {
        return 0.0;
    }
    2.0 * polylog_exp_neg(4, zeta) + zeta * polylog_exp_neg(3, zeta)
}

/// Antiderivative of [`ideal_pressure_inner_integral`] vanishing at ∞.
pub fn ideal_pressure_outer_antiderivative(zeta: f64) -> f64 {
    if zeta.is_infinite() {
        return 0.0;
    }
    -(zeta * zeta * polylog_exp_neg(2, zeta) + 4.0 * zeta * polylog_exp_neg(3, zeta) + 6.0 * polylog_exp_neg(4, zeta))
}
