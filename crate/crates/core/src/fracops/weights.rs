//! Quadrature weights of the product-integration and L1 schemes.
//!
//! Both involve finite differences of `m^p` at large `m`; the direct
//! formulas lose about `log10(m)` digits, so large indices use the binomial
//! expansion in `1/m` instead.

/// Above this index the binomial expansions are used.
const SERIES_FROM: usize = 16;
const SERIES_TERMS: usize = 14;

/// `(j+1)^p - j^p` with full relative accuracy.
pub(crate) fn first_difference(p: f64, j: usize) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let jf = j as f64;
    jf.powf(p) * (p * (1.0 / jf).ln_1p()).exp_m1()
}

/// `(m+1)^p - 2m^p + (m-1)^p` for `m >= 1`.
pub(crate) fn second_difference(p: f64, m: usize) -> f64 {
    let mf = m as f64;
    if m < SERIES_FROM {
        return (mf + 1.0).powf(p) - 2.0 * mf.powf(p) + (mf - 1.0).powf(p);
    }
    // 2 Σ_{i>=1} binom(p, 2i) m^{p-2i}
    let u2 = 1.0 / (mf * mf);
    let mut binom = 1.0;
    let mut upow = 1.0;
    let mut acc = 0.0;
    for j in 1..=2 * SERIES_TERMS {
        binom *= (p - (j - 1) as f64) / j as f64;
        if j % 2 == 0 {
            upow *= u2;
            acc += binom * upow;
        }
    }
    2.0 * mf.powf(p) * acc
}

/// `(k-1)^p - (k-p)k^{p-1}` for `k >= 1`: the weight of the left end point in
/// the product-trapezoid rule, with `p = γ + 1`.
pub(crate) fn left_end_weight(p: f64, k: usize) -> f64 {
    let kf = k as f64;
    if k < SERIES_FROM {
        return (kf - 1.0).powf(p) - (kf - p) * kf.powf(p - 1.0);
    }
    // k^p [ (1-u)^p - 1 + p u ],  u = 1/k
    let u = -1.0 / kf;
    let mut binom = p;
    let mut upow = u;
    let mut acc = 0.0;
    for j in 2..=SERIES_TERMS + 1 {
        binom *= (p - (j - 1) as f64) / j as f64;
        upow *= u;
        acc += binom * upow;
    }
    kf.powf(p) * acc
}
