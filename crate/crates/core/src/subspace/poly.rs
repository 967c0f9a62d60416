//! Sparse multivariate polynomials over [`Scalar`] in the basis coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::Scalar;

pub type Exponents = Vec<u16>;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_assign_scaled(self, s);
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Total degree of every term, if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, c: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, k)| {
                e.iter().zip(c).fold(k.to_f64(), |acc, (&p, &x)| acc * x.powi(p as i32))
            })
            .sum()
    }

    /// Exact evaluation at rational arguments; `None` if a coefficient is inexact.
    pub fn eval_exact(&self, c: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, k) in &self.terms {
            let mut term = k.as_rational()?.clone();
            for (&p, x) in e.iter().zip(c) {
                if p > 0 {
                    term *= num_traits::pow(x.clone(), p as usize);
                }
            }
            acc += term;
        }
        Some(acc)
    }

    pub fn eval_scalar(&self, c: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, k) in &self.terms {
            let mut term = k.clone();
            for (&p, x) in e.iter().zip(c) {
                if p > 0 {
                    term = term * x.pow(p as u32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // highest degree first, then lexicographic on variable order
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&k| k as u32).sum();
            let db: u32 = b.iter().map(|&k| k as u32).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.names[v], p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("C{i}")).collect()
    }

    #[test]
    fn arithmetic_and_display() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[1, 1]), Scalar::int(2));
        assert_eq!(sq.homogeneous_degree(), Some(2));
        let d = sq.sub(&x.mul(&x)).sub(&y.mul(&y)).scaled(&Scalar::ratio(-1, 2));
        assert_eq!(d.display_with(&names(2)).to_string(), "-C0*C1");
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(sq.eval(&[1.0, 2.0]), 9.0);
    }
}
