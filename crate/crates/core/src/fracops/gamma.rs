//! Euler Gamma function on the real line.
//!
//! Lanczos approximation (g = 7, nine coefficients) for `x >= 1/2`; the
//! reflection identity `Γ(x)Γ(1-x) = π / sin(πx)` below that.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tolerances::POLE_TOL;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// ln(sqrt(2π))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument for which Γ(x) is finite in f64.
const GAMMA_MAX_ARG: f64 = 171.62;

fn lanczos_sum(xm1: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    acc
}

/// `sin(πx)` with the argument reduced exactly to `[-1/2, 1/2]`, so that it
/// vanishes exactly at integers and keeps relative accuracy near them.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64).rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

/// Returns the non-positive integer `k` with `|x - k| < POLE_TOL`, if any.
pub fn nearest_pole(x: f64) -> Option<f64> {
    if x > 0.5 {
        return None;
    }
    let k = x.round();
    if k <= 0.0 && (x - k).abs() < POLE_TOL {
        Some(k)
    } else {
        None
    }
}

/// Γ(x) for real `x`.
///
/// Fails with [`Error::Pole`] within `1e-12` of a non-positive integer.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("Gamma of NaN"));
    }
    if let Some(k) = nearest_pole(x) {
        return Err(Error::Pole(k));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_unchecked(1.0 - x))
    } else if x > GAMMA_MAX_ARG {
        f64::INFINITY
    } else if x == x.trunc() {
        // exact factorials up to 22!, correctly rounded products beyond
        (2..x as u32).fold(1.0, |acc, k| acc * k as f64)
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        // Split the power to delay overflow near the top of the range.
        let p = t.powf(0.5 * (xm1 + 0.5));
        (2.0 * PI).sqrt() * p * (p * (-t).exp()) * lanczos_sum(xm1)
    }
}

/// `ln |Γ(x)|`, finite for every non-pole argument.
pub fn ln_abs_gamma(x: f64) -> Result<f64> {
    if let Some(k) = nearest_pole(x) {
        return Err(Error::Pole(k));
    }
    Ok(ln_abs_gamma_unchecked(x))
}

fn ln_abs_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI.ln() - sin_pi(x).abs().ln() - ln_abs_gamma_unchecked(1.0 - x)
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
    }
}

/// Sign of Γ(x) away from poles.
pub fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        // Γ alternates sign between consecutive negative integers and is
        // negative on (-1, 0).
        let k = (-x).floor() as i64;
        if k % 2 == 0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Reciprocal Gamma `1/Γ(x)`: entire, equal to zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if nearest_pole(x).is_some() {
        return 0.0;
    }
    if x < 0.5 {
        let g = gamma_unchecked(1.0 - x);
        if g.is_finite() {
            sin_pi(x) * g / PI
        } else {
            sin_pi(x) * (ln_abs_gamma_unchecked(1.0 - x) - PI.ln()).exp()
        }
    } else if x > GAMMA_MAX_ARG {
        (-ln_abs_gamma_unchecked(x)).exp()
    } else {
        1.0 / gamma_unchecked(x)
    }
}

/// `Γ(num) / Γ(den)` with the removable-pole convention: the ratio is zero
/// when `den` is a pole and `num` is not.
pub fn gamma_ratio(num: f64, den: f64) -> Result<f64> {
    let g = gamma_fn(num)?;
    Ok(g * rgamma(den))
}
