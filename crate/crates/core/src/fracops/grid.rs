use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tolerances::{HALF_ORDER_TOL, INTEGER_ORDER_TOL};

/// A fractional order: a strictly positive real with integer / critical-half
/// classification.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::domain(format!("order must be positive and finite, got {value}")));
        }
        Ok(Order(value))
    }

    /// An order restricted to `(0, 1]`, the range of the time derivative.
    pub fn time(value: f64) -> Result<Self> {
        let o = Self::new(value)?;
        if value > 1.0 + INTEGER_ORDER_TOL {
            return Err(Error::domain(format!("time order must lie in (0, 1], got {value}")));
        }
        Ok(o)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        (self.0 - self.0.round()).abs() < INTEGER_ORDER_TOL
    }

    pub fn near_half(self) -> bool {
        (self.0 - 0.5).abs() < HALF_ORDER_TOL
    }

    /// True for `α ∈ (0, 1)` strictly, excluding orders within tolerance of 1.
    pub fn is_proper_fraction(self) -> bool {
        self.0 < 1.0 && !self.is_integer()
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Order::new(v).map_err(serde::de::Error::custom)
    }
}

/// Uniform grid `t_j = t0 + j h`, `j = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t0: f64,
    pub h: f64,
    pub n: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, h: f64, n: usize) -> Result<Self> {
        if !(t0.is_finite() && t0 >= 0.0) {
            return Err(Error::domain(format!("grid start must be >= 0, got {t0}")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::domain(format!("grid step must be > 0, got {h}")));
        }
        Ok(TimeGrid { t0, h, n })
    }

    /// Grid on `[t0, t_end]` with step close to `h`: `n = round((t_end - t0)/h)`
    /// and the step kept exactly at `h`.
    pub fn spanning(t0: f64, t_end: f64, h: f64) -> Result<Self> {
        if !(t_end > t0) {
            return Err(Error::domain(format!("empty window [{t0}, {t_end}]")));
        }
        let n = ((t_end - t0) / h).round() as usize;
        Self::new(t0, h, n)
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(move |j| self.node(j))
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First node index with `t_j >= t` (up to rounding).
    pub fn first_index_at_or_after(&self, t: f64) -> usize {
        let k = ((t - self.t0) / self.h - 1e-9).ceil();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.n + 1)
        }
    }

    /// The grid with half the step over the same span.
    pub fn refined(&self) -> Self {
        TimeGrid {
            t0: self.t0,
            h: 0.5 * self.h,
            n: 2 * self.n,
        }
    }
}

/// Samples of a function on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::domain(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Sampled { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Sampled { grid, values }
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    pub fn max_abs_diff(&self, other: &Sampled) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_flags() {
        assert!(Order::new(0.0).is_err());
        assert!(Order::new(-0.3).is_err());
        assert!(Order::new(1.0).unwrap().is_integer());
        assert!(Order::new(2.0 + 1e-13).unwrap().is_integer());
        assert!(!Order::new(0.75).unwrap().is_integer());
        assert!(Order::new(0.5).unwrap().near_half());
        assert!(!Order::new(0.5 + 1e-9).unwrap().near_half());
        assert!(Order::time(1.5).is_err());
        assert!(Order::new(1.5).is_ok());
    }

    #[test]
    fn grid_spanning_and_lookup() {
        let g = TimeGrid::spanning(0.0, 5.0, 4.8828e-4).unwrap();
        assert_eq!(g.n, 10240);
        let g = TimeGrid::spanning(0.0, 5.0, 0.25).unwrap();
        assert_eq!(g.first_index_at_or_after(0.5), 2);
        assert_eq!(g.first_index_at_or_after(0.6), 3);
        assert_eq!(g.first_index_at_or_after(0.0), 0);
        assert_eq!(g.refined().n, 40);
    }
}
