//! Closure of K-family operators on finite function bases, in exact
//! rational arithmetic where the inputs allow it.

mod basis;
mod closure;
mod poly;
mod scalar;

pub use basis::{Basis, Expansion};
pub use closure::{
    apply_operator, check_invariance, expand_power, reduce_to_system, ClosureReport, Form,
    KOperator, LinearCondition, QuadraticForm, ResidualTerm,
};
pub use poly::{Exponents, Poly};
pub use scalar::{primitive_integer_vector, Scalar};
