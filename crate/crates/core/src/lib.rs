//! Exact and numerical machinery for time-fractional nonlinear dispersive
//! equations of the form
//!
//! ```text
//! D^α u = ν ∂⁵(uᵖ) + β ∂³(uⁿ) + γ ∂(uᵐ),   0 < α ≤ 1,
//! ```
//!
//! with `D^α` the Caputo derivative in time.
//!
//! The crate is organised bottom-up:
//!
//! - [`fracops`]: Gamma function, Riemann–Liouville integral and Caputo
//!   derivative (closed-form power rules and the L1 / product-integration
//!   schemes on uniform grids).
//! - [`mittag`]: the two-parameter Mittag-Leffler function `E_{a,b}` on the
//!   real line and its Caputo-derivative identities.
//! - [`subspace`]: exact closure computations of the nonlinear operator on
//!   polynomial, trigonometric and hyperbolic function systems.
//! - [`solutions`]: the separated-variable exact solutions (similarity,
//!   Mittag-Leffler compacton, Odibat compact wave).
//! - [`verify`]: residual checks of those solutions, algebraic and numerical.

pub mod error;
pub mod fracops;
pub mod mittag;
pub mod quad;
pub mod solutions;
pub mod subspace;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use fracops::{gamma_fn, Order, PowerTerm, Sampled, TimeGrid};
pub use mittag::{ml, MLSpec, Policy};
pub use solutions::{OdibatSolution, QuinticSolution, SimilaritySolution};
pub use subspace::{Basis, ClosureReport, KOperator, Scalar};
pub use verify::ResidualReport;
