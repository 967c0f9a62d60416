//! Function bases and their products/derivatives in the extended
//! (higher degree or higher frequency) space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::tolerances::EXTENDED_BASIS_CAP;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    /// 1, x, ..., x^degree
    Monomial { degree: usize },
    /// 1, cos(ωx), sin(ωx)
    Trig { omega: Scalar },
    /// 1, cosh(ωx), sinh(ωx)
    Hyperbolic { omega: Scalar },
}

impl Basis {
    pub fn monomial(degree: usize) -> Result<Self> {
        if degree > EXTENDED_BASIS_CAP {
            return Err(Error::Overflow { cap: EXTENDED_BASIS_CAP, requested: degree });
        }
        Ok(Basis::Monomial { degree })
    }

    pub fn trig(omega: Scalar) -> Result<Self> {
        check_omega(&omega)?;
        Ok(Basis::Trig { omega })
    }

    pub fn hyperbolic(omega: Scalar) -> Result<Self> {
        check_omega(&omega)?;
        Ok(Basis::Hyperbolic { omega })
    }

    pub fn dim(&self) -> usize {
        match self {
            Basis::Monomial { degree } => degree + 1,
            _ => 3,
        }
    }

    /// Coefficient names: `C0..Cd` for monomials, `C1, C2, C3` for the
    /// harmonic bases.
    pub fn var_names(&self) -> Vec<String> {
        let offset = match self {
            Basis::Monomial { .. } => 0,
            _ => 1,
        };
        (0..self.dim()).map(|i| format!("C{}", i + offset)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.slot_label(self.slot_of(i))).collect()
    }

    pub fn omega(&self) -> Option<&Scalar> {
        match self {
            Basis::Monomial { .. } => None,
            Basis::Trig { omega } | Basis::Hyperbolic { omega } => Some(omega),
        }
    }

    fn slot_of(&self, i: usize) -> Slot {
        match (self, i) {
            (Basis::Monomial { .. }, j) => Slot::Power(j),
            (_, 0) => Slot::Even(0),
            (_, 1) => Slot::Even(1),
            _ => Slot::Odd(1),
        }
    }

    /// Value of the i-th basis function at x.
    pub fn element(&self, i: usize, x: f64) -> f64 {
        self.slot_value(self.slot_of(i), x)
    }

    /// Value of the `order`-th x-derivative of the i-th basis function.
    pub fn element_derivative(&self, i: usize, order: u32, x: f64) -> f64 {
        match (self, self.slot_of(i)) {
            (Basis::Monomial { .. }, Slot::Power(j)) => {
                let o = order as usize;
                if o > j {
                    return 0.0;
                }
                let falling: f64 = (0..o).map(|r| (j - r) as f64).product();
                falling * x.powi((j - o) as i32)
            }
            (_, Slot::Even(0)) => {
                if order == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            (_, slot) => {
                let w = self.omega().map(Scalar::to_f64).unwrap_or(1.0);
                let hyper = matches!(self, Basis::Hyperbolic { .. });
                let even = matches!(slot, Slot::Even(_));
                let scale = w.powi(order as i32);
                let wx = w * x;
                if hyper {
                    let use_even = even == (order % 2 == 0);
                    scale * if use_even { wx.cosh() } else { wx.sinh() }
                } else {
                    // cos -> -sin -> -cos -> sin, sin -> cos -> -sin -> -cos
                    let phase = order as usize + if even { 0 } else { 3 };
                    scale
                        * match phase % 4 {
                            0 => wx.cos(),
                            1 => -wx.sin(),
                            2 => -wx.cos(),
                            _ => wx.sin(),
                        }
                }
            }
        }
    }

    /// The basis vector with symbolic coefficients `C`.
    pub fn symbolic(&self) -> Expansion {
        let n = self.dim();
        let mut e = Expansion::zero(self, n);
        for i in 0..n {
            *e.slot_mut(self.slot_of(i)) = Poly::var(n, i);
        }
        e
    }

    fn slot_value(&self, slot: Slot, x: f64) -> f64 {
        let w = self.omega().map(Scalar::to_f64).unwrap_or(1.0);
        match (self, slot) {
            (_, Slot::Power(j)) => x.powi(j as i32),
            (Basis::Hyperbolic { .. }, Slot::Even(k)) => (k as f64 * w * x).cosh(),
            (Basis::Hyperbolic { .. }, Slot::Odd(k)) => (k as f64 * w * x).sinh(),
            (_, Slot::Even(k)) => (k as f64 * w * x).cos(),
            (_, Slot::Odd(k)) => (k as f64 * w * x).sin(),
        }
    }

    pub(crate) fn slot_label(&self, slot: Slot) -> String {
        let arg = |k: usize| {
            let m = self.omega().cloned().unwrap_or_else(Scalar::one) * Scalar::int(k as i64);
            if m.is_one() {
                "x".to_string()
            } else {
                format!("{m}*x")
            }
        };
        let hyper = matches!(self, Basis::Hyperbolic { .. });
        match slot {
            Slot::Power(0) | Slot::Even(0) => "1".into(),
            Slot::Power(1) => "x".into(),
            Slot::Power(j) => format!("x^{j}"),
            Slot::Even(k) if hyper => format!("cosh({})", arg(k)),
            Slot::Odd(k) if hyper => format!("sinh({})", arg(k)),
            Slot::Even(k) => format!("cos({})", arg(k)),
            Slot::Odd(k) => format!("sin({})", arg(k)),
        }
    }

    pub(crate) fn in_span(&self, slot: Slot) -> Option<usize> {
        match (self, slot) {
            (Basis::Monomial { degree }, Slot::Power(j)) if j <= *degree => Some(j),
            (Basis::Monomial { .. }, _) => None,
            (_, Slot::Even(0)) => Some(0),
            (_, Slot::Even(1)) => Some(1),
            (_, Slot::Odd(1)) => Some(2),
            _ => None,
        }
    }
}

fn check_omega(omega: &Scalar) -> Result<()> {
    if !(omega.to_f64() > 0.0) || omega.is_zero() {
        return Err(Error::domain(format!("frequency must be positive, got {omega}")));
    }
    Ok(())
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Monomial { degree } => write!(f, "monomial:{degree}"),
            Basis::Trig { omega } => write!(f, "trig:{omega}"),
            Basis::Hyperbolic { omega } => write!(f, "hyperbolic:{omega}"),
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    /// `monomial:<degree>`, `trig:<omega>` or `hyperbolic:<omega>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected kind:parameter, got {s:?}")))?;
        match kind.trim() {
            "monomial" => {
                let d = arg
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree {arg:?}")))?;
                Basis::monomial(d)
            }
            "trig" => Basis::trig(parse_frequency(arg)?),
            "hyperbolic" => Basis::hyperbolic(parse_frequency(arg)?),
            other => Err(Error::Parse(format!("unknown basis kind {other:?}"))),
        }
    }
}

/// A rational literal or `sqrt(q)`.
fn parse_frequency(s: &str) -> Result<Scalar> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return Ok(inner.parse::<Scalar>()?.sqrt());
    }
    s.parse()
}

/// Position in the extended space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Slot {
    Power(usize),
    /// cos/cosh(kωx); k = 0 is the constant.
    Even(usize),
    /// sin/sinh(kωx), k ≥ 1.
    Odd(usize),
}

/// A function in the extended space with polynomial (in `C`) coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    basis: Basis,
    nvars: usize,
    /// monomial: coefficient of x^j; harmonic: even[k]
    even: Vec<Poly>,
    /// harmonic only: odd[k], odd[0] unused
    odd: Vec<Poly>,
}

impl Expansion {
    pub(crate) fn zero(basis: &Basis, nvars: usize) -> Self {
        let len = match basis {
            Basis::Monomial { degree } => degree + 1,
            _ => 2,
        };
        Expansion {
            basis: basis.clone(),
            nvars,
            even: vec![Poly::zero(nvars); len],
            odd: match basis {
                Basis::Monomial { .. } => Vec::new(),
                _ => vec![Poly::zero(nvars); len],
            },
        }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    fn is_harmonic(&self) -> bool {
        !matches!(self.basis, Basis::Monomial { .. })
    }

    /// Highest degree (monomial) or harmonic index (trig/hyperbolic) stored.
    pub fn order(&self) -> usize {
        self.even.len() - 1
    }

    fn grow(&mut self, len: usize) -> Result<()> {
        if len > EXTENDED_BASIS_CAP + 1 {
            return Err(Error::Overflow { cap: EXTENDED_BASIS_CAP, requested: len - 1 });
        }
        while self.even.len() < len {
            self.even.push(Poly::zero(self.nvars));
            if self.is_harmonic() {
                self.odd.push(Poly::zero(self.nvars));
            }
        }
        Ok(())
    }

    fn slot_mut(&mut self, slot: Slot) -> &mut Poly {
        match slot {
            Slot::Power(j) | Slot::Even(j) => &mut self.even[j],
            Slot::Odd(k) => &mut self.odd[k],
        }
    }

    pub(crate) fn slots(&self) -> Vec<(Slot, &Poly)> {
        if self.is_harmonic() {
            let mut out = Vec::new();
            for k in 0..self.even.len() {
                out.push((Slot::Even(k), &self.even[k]));
                if k > 0 {
                    out.push((Slot::Odd(k), &self.odd[k]));
                }
            }
            out
        } else {
            self.even.iter().enumerate().map(|(j, p)| (Slot::Power(j), p)).collect()
        }
    }

    /// Non-zero coefficients as `(label, polynomial)` pairs.
    pub fn nonzero_terms(&self) -> Vec<(String, &Poly)> {
        self.slots()
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, p)| (self.basis.slot_label(s), p))
            .collect()
    }

    /// Coefficient of the given slot label, e.g. `"x^3"` or `"cos(2*x)"`.
    pub fn coefficient(&self, label: &str) -> Option<&Poly> {
        self.slots()
            .into_iter()
            .find(|(s, _)| self.basis.slot_label(*s) == label)
            .map(|(_, p)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.even.iter().chain(&self.odd).all(Poly::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Expansion, s: &Scalar) -> Result<()> {
        self.grow(other.even.len())?;
        for (k, p) in other.even.iter().enumerate() {
            self.even[k].add_assign_scaled(p, s);
        }
        for (k, p) in other.odd.iter().enumerate() {
            self.odd[k].add_assign_scaled(p, s);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Expansion) -> Result<Expansion> {
        let mut out = Expansion::zero(&self.basis, self.nvars);
        let half = Scalar::ratio(1, 2);
        let neg_half = Scalar::ratio(-1, 2);
        if !self.is_harmonic() {
            out.grow(self.even.len() + other.even.len() - 1)?;
            for (i, a) in self.even.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.even.iter().enumerate() {
                    if !b.is_zero() {
                        out.even[i + j].add_assign_scaled(&a.mul(b), &Scalar::one());
                    }
                }
            }
            return Ok(out);
        }
        let hyper = matches!(self.basis, Basis::Hyperbolic { .. });
        out.grow(self.even.len() + other.even.len() - 1)?;
        let terms = |e: &Expansion| -> Vec<(Slot, Poly)> {
            e.slots()
                .into_iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(s, p)| (s, p.clone()))
                .collect()
        };
        let (ta, tb) = (terms(self), terms(other));
        for (sa, pa) in &ta {
            for (sb, pb) in &tb {
                let prod = pa.mul(pb);
                let (i, j) = (index(*sa), index(*sb));
                let (sum, diff) = (i + j, i.abs_diff(j));
                // sign of sin((i - j)θ) relative to sin(|i - j|θ)
                let sgn = match i.cmp(&j) {
                    std::cmp::Ordering::Greater => Scalar::one(),
                    std::cmp::Ordering::Less => Scalar::int(-1),
                    std::cmp::Ordering::Equal => Scalar::zero(),
                };
                match (sa, sb) {
                    (Slot::Even(_), Slot::Even(_)) => {
                        out.even[sum].add_assign_scaled(&prod, &half);
                        out.even[diff].add_assign_scaled(&prod, &half);
                    }
                    (Slot::Odd(_), Slot::Odd(_)) => {
                        if hyper {
                            out.even[sum].add_assign_scaled(&prod, &half);
                            out.even[diff].add_assign_scaled(&prod, &neg_half);
                        } else {
                            out.even[sum].add_assign_scaled(&prod, &neg_half);
                            out.even[diff].add_assign_scaled(&prod, &half);
                        }
                    }
                    (Slot::Odd(_), Slot::Even(_)) => {
                        out.odd[sum].add_assign_scaled(&prod, &half);
                        out.odd[diff].add_assign_scaled(&prod, &(&half * &sgn));
                    }
                    (Slot::Even(_), Slot::Odd(_)) => {
                        out.odd[sum].add_assign_scaled(&prod, &half);
                        out.odd[diff].add_assign_scaled(&prod, &(&neg_half * &sgn));
                    }
                    _ => unreachable!("monomial slot in harmonic expansion"),
                }
            }
        }
        out.odd[0] = Poly::zero(self.nvars);
        out.trim();
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Expansion> {
        if k == 0 {
            return Err(Error::domain("power must be at least 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Expansion {
        let mut out = Expansion::zero(&self.basis, self.nvars);
        match &self.basis {
            Basis::Monomial { .. } => {
                out.even = vec![Poly::zero(self.nvars); self.even.len().max(2) - 1];
                for j in 1..self.even.len() {
                    out.even[j - 1] = self.even[j].scaled(&Scalar::int(j as i64));
                }
            }
            Basis::Trig { omega } | Basis::Hyperbolic { omega } => {
                let hyper = matches!(self.basis, Basis::Hyperbolic { .. });
                let len = self.even.len();
                out.even = vec![Poly::zero(self.nvars); len];
                out.odd = vec![Poly::zero(self.nvars); len];
                for k in 1..len {
                    let kw = omega * &Scalar::int(k as i64);
                    out.even[k] = self.odd[k].scaled(&kw);
                    out.odd[k] = self.even[k].scaled(&if hyper { kw } else { -kw });
                }
            }
        }
        out
    }

    pub fn derivative_n(&self, n: u32) -> Expansion {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.derivative();
        }
        e
    }

    fn trim(&mut self) {
        let keep = |e: &Vec<Poly>, o: &Vec<Poly>, k: usize| {
            !e[k].is_zero() || o.get(k).is_some_and(|p| !p.is_zero())
        };
        while self.even.len() > 1 && !keep(&self.even, &self.odd, self.even.len() - 1) {
            self.even.pop();
            if self.is_harmonic() {
                self.odd.pop();
            }
        }
    }

    /// Evaluate at numeric coefficients `c` and point `x`.
    pub fn eval(&self, c: &[f64], x: f64) -> f64 {
        self.slots()
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, p)| p.eval(c) * self.basis.slot_value(s, x))
            .sum()
    }

    /// Split into the in-span coordinates and the out-of-span remainder.
    pub(crate) fn project(&self) -> (Vec<Poly>, Vec<(Slot, Poly)>) {
        let mut span = vec![Poly::zero(self.nvars); self.basis.dim()];
        let mut rest = Vec::new();
        for (s, p) in self.slots() {
            match self.basis.in_span(s) {
                Some(i) => span[i] = p.clone(),
                None if !p.is_zero() => rest.push((s, p.clone())),
                None => {}
            }
        }
        (span, rest)
    }
}

fn index(s: Slot) -> usize {
    match s {
        Slot::Power(j) | Slot::Even(j) | Slot::Odd(j) => j,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_angle() {
        let b = Basis::trig(Scalar::one()).unwrap();
        let sq = b.symbolic().pow(2).unwrap();
        let names = b.var_names();
        let show = |l: &str| sq.coefficient(l).unwrap().display_with(&names).to_string();
        assert_eq!(show("1"), "C1^2 + 1/2*C2^2 + 1/2*C3^2");
        assert_eq!(show("cos(x)"), "2*C1*C2");
        assert_eq!(show("sin(x)"), "2*C1*C3");
        assert_eq!(show("cos(2*x)"), "1/2*C2^2 - 1/2*C3^2");
        assert_eq!(show("sin(2*x)"), "C2*C3");
    }

    #[test]
    fn products_match_pointwise() {
        for basis in [
            Basis::trig(Scalar::ratio(3, 2)).unwrap(),
            Basis::hyperbolic(Scalar::ratio(1, 2)).unwrap(),
            Basis::monomial(3).unwrap(),
        ] {
            let u = basis.symbolic();
            let c = [0.7, -1.3, 0.4, 0.9][..basis.dim()].to_vec();
            let u3 = u.pow(3).unwrap();
            let d2 = u3.derivative_n(2);
            for x in [-1.1, 0.3, 2.0] {
                let v = u.eval(&c, x);
                assert!((u3.eval(&c, x) - v.powi(3)).abs() < 1e-12 * (1.0 + v.abs().powi(3)));
                // second derivative by central differences
                let h = 1e-4;
                let fd = (u3.eval(&c, x + h) - 2.0 * u3.eval(&c, x) + u3.eval(&c, x - h)) / (h * h);
                assert!((d2.eval(&c, x) - fd).abs() < 1e-4 * (1.0 + fd.abs()), "{basis}");
            }
        }
    }

    #[test]
    fn element_derivatives() {
        let b = Basis::trig(Scalar::from(2)).unwrap();
        assert!((b.element_derivative(2, 3, 0.4) - (-8.0 * (0.8f64).cos())).abs() < 1e-14);
        let h = Basis::hyperbolic(Scalar::ratio(1, 2)).unwrap();
        assert!((h.element_derivative(1, 1, 1.0) - 0.5 * (0.5f64).sinh()).abs() < 1e-14);
        let m = Basis::monomial(3).unwrap();
        assert_eq!(m.element_derivative(3, 2, 2.0), 12.0);
        assert_eq!(m.element_derivative(2, 3, 2.0), 0.0);
    }

    #[test]
    fn cap_is_enforced() {
        let b = Basis::monomial(10).unwrap();
        assert!(matches!(b.symbolic().pow(7), Err(Error::Overflow { .. })));
        assert!("monomial:3".parse::<Basis>().is_ok());
        assert!("trig:0".parse::<Basis>().is_err());
        assert!("hyperbolic:1/2".parse::<Basis>().is_ok());
    }
}
