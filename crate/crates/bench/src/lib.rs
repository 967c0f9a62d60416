//! Inputs shared by the benchmarks.

use fracwave::{Sampled, TimeGrid};

/// `sin(3t) + t²` on `[0, 1]` with `n` steps.
pub fn smooth_samples(n: usize) -> Sampled {
    let grid = TimeGrid::new(0.0, 1.0 / n as f64, n).expect("valid grid");
    Sampled::from_fn(grid, |t| (3.0 * t).sin() + t * t)
}
