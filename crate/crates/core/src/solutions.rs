//! Separated-variable exact solutions `u(x,t) = Σ gᵢ(t) fᵢ(x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracops::{gamma_ratio, Order};
use crate::mittag::{ml_cos_branch, ml_sin_branch};
use crate::subspace::{Basis, KOperator, Scalar};
use crate::tolerances::{CONDITION_TOL, INTEGER_ORDER_TOL};

/// A solution whose spatial profile lies in a fixed basis for every `t`.
pub trait SeparatedSolution {
    fn alpha(&self) -> Order;

    fn basis(&self) -> Basis;

    /// Coordinates `gᵢ(t)` in [`Self::basis`].
    fn coefficients(&self, t: f64) -> Result<Vec<f64>>;

    /// `Σ gᵢ(t) fᵢ(x)` without any support restriction.
    fn eval_separated(&self, x: f64, t: f64) -> Result<f64> {
        let basis = self.basis();
        let g = self.coefficients(t)?;
        Ok(g.iter().enumerate().map(|(i, gi)| gi * basis.element(i, x)).sum())
    }
}

fn check_t(t: f64, strict: bool) -> Result<()> {
    let ok = t.is_finite() && if strict { t > 0.0 } else { t >= 0.0 };
    if !ok {
        let bound = if strict { "> 0" } else { ">= 0" };
        return Err(Error::domain(format!("time must be {bound}, got {t}")));
    }
    Ok(())
}

fn is_unit(alpha: Order) -> bool {
    (alpha.value() - 1.0).abs() < INTEGER_ORDER_TOL
}

/// `u = (C₀ + C₁x + C₂x² + C₃x³) t^{-α}` for `∂ᵅu = ∂³(u²/2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilaritySolution {
    pub alpha: Order,
    #[serde(rename = "C")]
    pub c: [f64; 4],
    pub kappa: f64,
}

impl SimilaritySolution {
    pub fn build(alpha: f64) -> Result<Self> {
        let order = Order::new(alpha)?;
        if order.near_half() {
            return Err(Error::SingularAlpha);
        }
        if is_unit(order) {
            return Err(Error::IntegerAlpha);
        }
        if alpha >= 1.0 {
            return Err(Error::domain(format!("similarity solution needs α ∈ (0,1), got {alpha}")));
        }
        // D^α t^{-α} = κ t^{-2α}
        let kappa = gamma_ratio(1.0 - alpha, 1.0 - 2.0 * alpha)?;
        let c = [400.0 / (3.0 * kappa * kappa), 20.0 / kappa, 1.0, kappa / 60.0];
        Ok(SimilaritySolution { alpha: order, c, kappa })
    }

    /// `(400/3)·(1/(60κ))²`, the alternative value of `C₀` that does not
    /// satisfy the constant-term equation; kept for comparison.
    pub fn c0_reference(&self) -> f64 {
        let r = 1.0 / (60.0 * self.kappa);
        400.0 / 3.0 * r * r
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        check_t(t, true)?;
        let [c0, c1, c2, c3] = self.c;
        Ok((c0 + x * (c1 + x * (c2 + x * c3))) * t.powf(-self.alpha.value()))
    }

    /// The operator this solution satisfies.
    pub fn operator() -> KOperator {
        KOperator::third_order()
    }
}

impl SeparatedSolution for SimilaritySolution {
    fn alpha(&self) -> Order {
        self.alpha
    }

    fn basis(&self) -> Basis {
        Basis::Monomial { degree: 3 }
    }

    fn coefficients(&self, t: f64) -> Result<Vec<f64>> {
        check_t(t, true)?;
        let s = t.powf(-self.alpha.value());
        Ok(self.c.iter().map(|c| c * s).collect())
    }
}

/// `u = C + E_{2α,1}(-μ̄²t^{2α}) cos x - μ̄ t^α E_{2α,α+1}(-μ̄²t^{2α}) sin x`
/// for the quadratic quintic equation with `16ν - 4β + γ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuinticSolution {
    pub alpha: Order,
    pub nu: f64,
    pub beta: f64,
    pub gamma_c: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub mu: f64,
    pub mubar: f64,
}

impl QuinticSolution {
    pub fn build(alpha: f64, nu: f64, beta: f64, gamma_c: f64, c: f64) -> Result<Self> {
        let alpha = Order::time(alpha)?;
        for (name, v) in [("nu", nu), ("beta", beta), ("gamma", gamma_c), ("C", c)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite")));
            }
        }
        let cond = 16.0 * nu - 4.0 * beta + gamma_c;
        if cond.abs() > CONDITION_TOL {
            return Err(Error::Condition(cond));
        }
        let mu = 2.0 * (nu - beta + gamma_c);
        if mu.abs() < CONDITION_TOL {
            return Err(Error::Degenerate("μ = 2(ν - β + γ) vanishes".into()));
        }
        if c == 0.0 {
            return Err(Error::Degenerate("C = 0 freezes the profile".into()));
        }
        Ok(QuinticSolution { alpha, nu, beta, gamma_c, c, mu, mubar: c * mu })
    }

    pub fn operator(&self) -> KOperator {
        KOperator {
            nu: Scalar::from_f64(self.nu),
            beta: Scalar::from_f64(self.beta),
            gamma_c: Scalar::from_f64(self.gamma_c),
            p: 2,
            n: 2,
            m: 2,
            convective: None,
        }
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        check_t(t, false)?;
        if is_unit(self.alpha) {
            return Ok(self.c + (x + self.mubar * t).cos());
        }
        let g = self.coefficients(t)?;
        Ok(g[0] + g[1] * x.cos() + g[2] * x.sin())
    }
}

impl SeparatedSolution for QuinticSolution {
    fn alpha(&self) -> Order {
        self.alpha
    }

    fn basis(&self) -> Basis {
        Basis::Trig { omega: Scalar::one() }
    }

    fn coefficients(&self, t: f64) -> Result<Vec<f64>> {
        check_t(t, false)?;
        if is_unit(self.alpha) {
            let w = self.mubar * t;
            return Ok(vec![self.c, w.cos(), -w.sin()]);
        }
        Ok(vec![
            self.c,
            ml_cos_branch(self.alpha, self.mubar, t)?,
            -ml_sin_branch(self.alpha, self.mubar, t)?,
        ])
    }
}

/// Compact wave `(c/a)[1 - cos(√a x) cos(w,α) - sin(√a x) sin(w,α)]`,
/// `w = √a c t^α`, on `|x - c t^α| ≤ π/μ` with `μ = √a/2`, zero outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdibatSolution {
    pub a: f64,
    pub c: f64,
    pub alpha: Order,
    pub mu_supp: f64,
}

impl OdibatSolution {
    pub fn build(a: f64, c: f64, alpha: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("a must be positive, got {a}")));
        }
        if !c.is_finite() {
            return Err(Error::domain("c must be finite"));
        }
        let alpha = Order::time(alpha)?;
        Ok(OdibatSolution { a, c, alpha, mu_supp: a.sqrt() / 2.0 })
    }

    /// Centre of the support at time t.
    pub fn centre(&self, t: f64) -> f64 {
        self.c * t.powf(self.alpha.value())
    }

    pub fn half_width(&self) -> f64 {
        std::f64::consts::PI / self.mu_supp
    }

    pub fn in_support(&self, x: f64, t: f64) -> bool {
        (x - self.centre(t)).abs() <= self.half_width()
    }

    /// Right-hand side operator: `∂ᵅu = -a ∂(u²) - ∂(u ∂²u)`.
    pub fn operator(&self) -> KOperator {
        KOperator {
            nu: Scalar::zero(),
            beta: Scalar::zero(),
            gamma_c: -Scalar::from_f64(self.a),
            p: 2,
            n: 2,
            m: 2,
            convective: Some(Scalar::int(-1)),
        }
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        check_t(t, false)?;
        if !self.in_support(x, t) {
            return Ok(0.0);
        }
        if is_unit(self.alpha) {
            let s = self.a.sqrt();
            return Ok(self.c / self.a * (1.0 - (s * (x - self.c * t)).cos()));
        }
        self.eval_separated(x, t)
    }
}

impl SeparatedSolution for OdibatSolution {
    fn alpha(&self) -> Order {
        self.alpha
    }

    fn basis(&self) -> Basis {
        Basis::Trig { omega: Scalar::from_f64(self.a).sqrt() }
    }

    fn coefficients(&self, t: f64) -> Result<Vec<f64>> {
        check_t(t, false)?;
        let amp = self.c / self.a;
        let s = self.a.sqrt();
        let (cw, sw) = if is_unit(self.alpha) {
            let w = s * self.c * t;
            (w.cos(), w.sin())
        } else {
            let mubar = s * self.c;
            (ml_cos_branch(self.alpha, mubar, t)?, ml_sin_branch(self.alpha, mubar, t)?)
        };
        Ok(vec![amp, -amp * cw, -amp * sw])
    }
}

/// `u ≡ 0` in a given basis; satisfies every K equation.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSolution {
    pub alpha: Order,
    pub basis: Basis,
}

impl SeparatedSolution for ZeroSolution {
    fn alpha(&self) -> Order {
        self.alpha
    }

    fn basis(&self) -> Basis {
        self.basis.clone()
    }

    fn coefficients(&self, t: f64) -> Result<Vec<f64>> {
        check_t(t, false)?;
        Ok(vec![0.0; self.basis.dim()])
    }
}

/// A time-fractional K equation: order plus right-hand side operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KEquation {
    pub alpha: Order,
    pub op: KOperator,
}

/// `∂ᵅu = ∂³(u²) + ∂(u²)`; fails the trigonometric invariance condition
/// (`16ν - 4β + γ = -3`).
pub fn rosenau_hyman(alpha: f64) -> Result<KEquation> {
    Ok(KEquation { alpha: Order::time(alpha)?, op: KOperator::rosenau_hyman() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn similarity_coefficients() {
        // mpmath, 30 digits
        let s = SimilaritySolution::build(0.25).unwrap();
        assert_abs_diff_eq!(s.kappa, 0.69136733903629335053, epsilon = 1e-14);
        assert_abs_diff_eq!(s.c[3], 0.011522788983938222509, epsilon = 1e-15);
        assert_abs_diff_eq!(s.c[1], 28.928181692641542851, epsilon = 1e-12);
        assert_abs_diff_eq!(s.c[0], 278.94656534749377305, epsilon = 1e-11);
        assert_abs_diff_eq!(s.c0_reference(), 0.077485157040970492515, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eval(0.0, 1.0).unwrap(), s.c[0]);
        let s = SimilaritySolution::build(0.75).unwrap();
        assert_abs_diff_eq!(s.kappa, -1.0227656721131686716, epsilon = 1e-14);
        assert!(s.c[3] < 0.0 && s.c[1] < 0.0);
        assert_eq!(SimilaritySolution::build(0.5), Err(Error::SingularAlpha));
        assert_eq!(SimilaritySolution::build(1.0), Err(Error::IntegerAlpha));
        assert!(SimilaritySolution::build(0.0).is_err());
        assert!(SimilaritySolution::build(1.5).is_err());
        assert!(s.eval(1.0, 0.0).is_err());
    }

    #[test]
    fn quintic_construction() {
        let q = QuinticSolution::build(0.5, 1.0, 4.5, 2.0, 1.0).unwrap();
        assert_eq!(q.mubar, -3.0);
        assert!(matches!(
            QuinticSolution::build(0.5, 1.0, 5.0, 4.0, 1.0),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            QuinticSolution::build(0.5, 0.0, 1.0, 1.0, 1.0),
            Err(Error::Condition(v)) if v == -3.0
        ));
        assert!(matches!(
            QuinticSolution::build(0.5, 1.0, 4.5, 2.0, 0.0),
            Err(Error::Degenerate(_))
        ));
        assert_abs_diff_eq!(q.eval(0.3, 0.0).unwrap(), 1.0 + 0.3f64.cos(), epsilon = 1e-15);
    }

    #[test]
    fn quintic_unit_order() {
        let q = QuinticSolution::build(1.0, 1.0, 4.5, 2.0, 0.5).unwrap();
        for (x, t) in [(0.1f64, 0.2f64), (2.0, 3.0), (-1.0, 7.5)] {
            let want = 0.5 + (x + q.mubar * t).cos();
            assert_abs_diff_eq!(q.eval(x, t).unwrap(), want, epsilon = 1e-14);
            assert_abs_diff_eq!(q.eval_separated(x, t).unwrap(), want, epsilon = 1e-14);
        }
    }

    #[test]
    fn odibat_profile() {
        let o = OdibatSolution::build(1.0, 1.0, 0.8).unwrap();
        assert_eq!(o.mu_supp, 0.5);
        assert_abs_diff_eq!(o.eval(1.0, 0.0).unwrap(), 1.0 - 1.0f64.cos(), epsilon = 1e-15);
        assert_eq!(o.eval(7.0, 0.0).unwrap(), 0.0);
        let o1 = OdibatSolution::build(4.0, 0.5, 1.0).unwrap();
        for (x, t) in [(0.2f64, 0.3f64), (1.0, 2.0)] {
            let want = 0.125 * (1.0 - (2.0 * (x - 0.5 * t)).cos());
            assert_abs_diff_eq!(o1.eval(x, t).unwrap(), want, epsilon = 1e-15);
            assert_abs_diff_eq!(o1.eval_separated(x, t).unwrap(), want, epsilon = 1e-14);
        }
        assert_eq!(o1.basis(), Basis::Trig { omega: Scalar::int(2) });
        assert!(!OdibatSolution::build(2.0, 1.0, 1.0).unwrap().basis().omega().unwrap().is_exact());
    }

    #[test]
    fn records_roundtrip() {
        let s = SimilaritySolution::build(0.3).unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert!(j.get("C").is_some() && j.get("kappa").is_some());
        assert_eq!(serde_json::from_value::<SimilaritySolution>(j).unwrap(), s);
        let q = QuinticSolution::build(0.5, 1.0, 4.5, 2.0, 1.0).unwrap();
        let j = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<QuinticSolution>(&j).unwrap(), q);
        let eq = rosenau_hyman(0.5).unwrap();
        assert_eq!(eq.op.trig_condition_value(), Scalar::int(-3));
        let j = serde_json::to_string(&eq).unwrap();
        assert_eq!(serde_json::from_str::<KEquation>(&j).unwrap(), eq);
    }
}
