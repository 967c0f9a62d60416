//! Closed-form action of `J^γ` and `D^γ` on power functions `c·t^δ`.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma_fn, rgamma};
use super::grid::Order;
use crate::error::{Error, Result};

/// `coeff · t^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coeff: f64,
    pub exponent: f64,
}

impl PowerTerm {
    pub fn new(coeff: f64, exponent: f64) -> Self {
        PowerTerm { coeff, exponent }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else {
            self.coeff * t.powf(self.exponent)
        }
    }
}

/// `J^γ (c t^δ) = c Γ(δ+1)/Γ(δ+γ+1) t^{δ+γ}` for `δ > -1`.
pub fn rl_integral_power(term: PowerTerm, gamma: Order) -> Result<PowerTerm> {
    let d = term.exponent;
    if !(d > -1.0) {
        return Err(Error::domain(format!("power rule needs δ > -1, got {d}")));
    }
    let g = gamma.value();
    let coeff = term.coeff * gamma_fn(d + 1.0)? * rgamma(d + g + 1.0);
    Ok(PowerTerm::new(coeff, d + g))
}

/// `D^γ (c t^δ) = c Γ(δ+1)/Γ(δ-γ+1) t^{δ-γ}` for `δ ∈ (-1,0) ∪ (0,∞)`.
///
/// The constant `δ = 0` maps to the zero term. When `δ - γ + 1` is a
/// non-positive integer the reciprocal Gamma vanishes and so does the
/// coefficient.
pub fn caputo_power(term: PowerTerm, gamma: Order) -> Result<PowerTerm> {
    let d = term.exponent;
    let g = gamma.value();
    if d == 0.0 {
        return Ok(PowerTerm::new(0.0, -g));
    }
    if !(d > -1.0) {
        return Err(Error::domain(format!(
            "Caputo power rule needs δ ∈ (-1,0) ∪ (0,∞), got {d}"
        )));
    }
    let coeff = term.coeff * gamma_fn(d + 1.0)? * rgamma(d - g + 1.0);
    Ok(PowerTerm::new(coeff, d - g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ord(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    #[test]
    fn integral_rule_examples() {
        let r = rl_integral_power(PowerTerm::new(1.0, 0.0), ord(0.5)).unwrap();
        assert_relative_eq!(r.coeff, 1.128_379_167_095_512_6, max_relative = 1e-14);
        assert_eq!(r.exponent, 0.5);

        let r = rl_integral_power(PowerTerm::new(1.0, 1.0), ord(1.0)).unwrap();
        assert_relative_eq!(r.coeff, 0.5, max_relative = 1e-14);
        assert_eq!(r.exponent, 2.0);

        // 2Γ(3/4)/Γ(1); Γ(3/4) = 1.2254167024651776 (mpmath)
        let r = rl_integral_power(PowerTerm::new(2.0, -0.25), ord(0.25)).unwrap();
        assert_relative_eq!(r.coeff, 2.450_833_404_930_355, max_relative = 1e-14);
        assert_eq!(r.exponent, 0.0);

        assert!(rl_integral_power(PowerTerm::new(1.0, -1.0), ord(0.5)).is_err());
    }

    #[test]
    fn caputo_rule_examples() {
        let r = caputo_power(PowerTerm::new(1.0, 1.0), ord(0.5)).unwrap();
        assert_relative_eq!(r.coeff, 1.128_379_167_095_512_6, max_relative = 1e-14);
        assert_eq!(r.exponent, 0.5);

        let c = caputo_power(PowerTerm::new(3.0, 0.0), ord(0.3)).unwrap();
        assert_eq!(c.coeff, 0.0);

        assert!(caputo_power(PowerTerm::new(1.0, -1.5), ord(0.3)).is_err());
    }

    #[test]
    fn caputo_of_negative_power_matches_similarity_rate() {
        // D^α (C t^{-α}) = C Γ(1-α)/Γ(1-2α) t^{-2α}
        for &a in &[0.25, 0.4, 0.6, 0.75] {
            let r = caputo_power(PowerTerm::new(2.0, -a), ord(a)).unwrap();
            let expected = 2.0 * gamma_fn(1.0 - a).unwrap() / gamma_fn(1.0 - 2.0 * a).unwrap();
            assert_relative_eq!(r.coeff, expected, max_relative = 1e-13);
            assert_relative_eq!(r.exponent, -2.0 * a);
        }
        // α = 1/2: Γ(1-2α) has a pole, the coefficient collapses to zero.
        let r = caputo_power(PowerTerm::new(1.0, -0.5), ord(0.5)).unwrap();
        assert_eq!(r.coeff, 0.0);
    }

    #[test]
    fn removable_pole_and_equal_order() {
        // δ = γ: D^γ t^γ = Γ(γ+1), constant.
        let r = caputo_power(PowerTerm::new(1.0, 0.7), ord(0.7)).unwrap();
        assert_relative_eq!(r.coeff, gamma_fn(1.7).unwrap(), max_relative = 1e-14);
        assert_eq!(r.exponent, 0.0);
        // δ - γ + 1 = -1: coefficient is exactly zero.
        let r = caputo_power(PowerTerm::new(1.0, 0.5), ord(2.5)).unwrap();
        assert_eq!(r.coeff, 0.0);
    }
}
