//! Coefficients of the closure algebra: exact rationals, or floats with a
//! tolerance-based zero test once any inexact input is involved.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::tolerances::ZERO_TEST;

#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn approx(v: f64) -> Self {
        Scalar::Approx(v)
    }

    /// Exact when `v` is an integer or a short dyadic/decimal fraction that
    /// round-trips through its shortest decimal form; otherwise inexact.
    pub fn from_f64(v: f64) -> Self {
        if !v.is_finite() {
            return Scalar::Approx(v);
        }
        format!("{v}").parse().unwrap_or(Scalar::Approx(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(v) => v.abs() < ZERO_TEST,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Approx(v) => (v - 1.0).abs() < ZERO_TEST,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Approx(v) => *v < 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or_else(|| {
                // very large numerators/denominators
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Scalar::Approx(v) => *v,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(v) => Scalar::Approx(v.abs()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(num_traits::pow(r.clone(), k as usize)),
            Scalar::Approx(v) => Scalar::Approx(v.powi(k as i32)),
        }
    }

    /// Exact when the value is the square of a rational, otherwise inexact.
    pub fn sqrt(&self) -> Self {
        if let Scalar::Exact(r) = self {
            if !r.is_negative() {
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                if &n * &n == *r.numer() && &d * &d == *r.denom() {
                    return Scalar::Exact(BigRational::new(n, d));
                }
            }
        }
        Scalar::Approx(self.to_f64().sqrt())
    }

    /// Exact integer value, if any.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Exact(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Approx(approx(self.to_f64(), other.to_f64())),
        }
    }
}

/// Scale a list of exact rationals to coprime integers with a positive
/// leading entry. Returns `None` if any entry is inexact or all are zero.
pub fn primitive_integer_vector(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let rats: Option<Vec<&BigRational>> = v.iter().map(Scalar::as_rational).collect();
    let rats = rats?;
    let lead = rats.iter().find(|r| !r.is_zero())?;
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (*r * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, i| acc.gcd(i));
    let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
    Some(
        ints.into_iter()
            .map(|i| Scalar::Exact(BigRational::from_integer(i / &gcd * &sign)))
            .collect(),
    )
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Exact(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $exact:expr, $approx:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.combine(rhs, $exact, $approx)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| a * b, |a, b| a * b);
forward_binop!(Div, div, |a, b| a / b, |a, b| a / b);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(v) => Scalar::Approx(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Approx(v) => write!(f, "{v}"),
        }
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts integers, decimals, scientific notation and `p/q` fractions,
    /// all parsed exactly.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_decimal(n.trim()).ok_or_else(bad)?;
            let d = parse_decimal(d.trim()).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar::Exact(n / d));
        }
        parse_decimal(s).map(Scalar::Exact).ok_or_else(bad)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => s.serialize_str(&self.to_string()),
            Scalar::Approx(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Repr::Number(v) => Ok(Scalar::Approx(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_is_exact() {
        assert_eq!("9/2".parse::<Scalar>().unwrap(), Scalar::ratio(9, 2));
        assert_eq!("4.5".parse::<Scalar>().unwrap(), Scalar::ratio(9, 2));
        assert_eq!("0.1".parse::<Scalar>().unwrap(), Scalar::ratio(1, 10));
        assert_eq!("-2.5e-1".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 4));
        assert_eq!("1e3".parse::<Scalar>().unwrap(), Scalar::int(1000));
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!(Scalar::from_f64(4.5).is_exact());
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::ratio(9, 4).sqrt(), Scalar::ratio(3, 2));
        assert!(Scalar::ratio(9, 4).sqrt().is_exact());
        assert!(!Scalar::int(2).sqrt().is_exact());
        assert!(!Scalar::approx(4.0).sqrt().is_exact());
    }

    #[test]
    fn mixed_arithmetic_degrades_to_float() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::approx(2.0f64.sqrt());
        assert!(!(&a * &b).is_exact());
        assert!((&a + &a).is_exact());
        assert!(Scalar::approx(1e-12).is_zero());
        assert!(!Scalar::Exact(BigRational::new(1.into(), BigInt::from(10).pow(20))).is_zero());
    }

    #[test]
    fn primitive_vector() {
        let v = [Scalar::int(-32), Scalar::int(8), Scalar::int(-2)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![Scalar::int(16), Scalar::int(-4), Scalar::int(1)]);
        let v = [Scalar::zero(), Scalar::ratio(1, 2), Scalar::ratio(-1, 3)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![Scalar::int(0), Scalar::int(3), Scalar::int(-2)]);
    }

    #[test]
    fn serde_roundtrip() {
        let s = Scalar::ratio(9, 2);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "\"9/2\"");
        assert_eq!(serde_json::from_str::<Scalar>(&j).unwrap(), s);
        let f: Scalar = serde_json::from_str("1.25").unwrap();
        assert!(!f.is_exact());
    }
}
