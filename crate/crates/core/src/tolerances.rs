//! Default thresholds shared by the library, the verifier and the CLI.

/// Distance from a non-positive integer at which Γ is treated as a pole.
pub const POLE_TOL: f64 = 1e-12;

/// `|α - round(α)|` below which an order counts as an integer.
pub const INTEGER_ORDER_TOL: f64 = 1e-12;

/// `|α - 1/2|` below which an order counts as the critical value 1/2.
pub const HALF_ORDER_TOL: f64 = 1e-12;

/// Relative term size that stops the Mittag-Leffler series.
pub const ML_SERIES_TOL: f64 = 1e-12;

/// Maximum number of Mittag-Leffler series terms.
pub const ML_KMAX: usize = 1000;

/// `|z|` limit for an explicitly requested power-series evaluation.
pub const ML_Z_SWITCH: f64 = 30.0;

/// Zero test for floating-point coefficients in the closure algebra.
pub const ZERO_TEST: f64 = 1e-10;

/// Largest polynomial degree / harmonic index of an extended basis.
pub const EXTENDED_BASIS_CAP: usize = 64;

/// Largest admissible integer power in a K operator.
pub const MAX_POWER: u32 = 6;

/// Residual threshold for checks that are exact up to rounding.
pub const ANALYTIC: f64 = 1e-10;

/// Residual threshold for L1-based checks at `h = 2^-11`.
pub const NUMERICAL: f64 = 1e-3;

/// Tolerance of the quintic invariance condition on floating coefficients.
pub const CONDITION_TOL: f64 = 1e-12;

/// Default start of the residual window; avoids the weak singularity at t = 0.
pub const WINDOW_START: f64 = 0.5;

/// Overridable pair of pass/fail thresholds used by the verifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub analytic: f64,
    pub numerical: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            analytic: ANALYTIC,
            numerical: NUMERICAL,
        }
    }
}
