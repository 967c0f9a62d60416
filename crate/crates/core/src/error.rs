use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma function pole at x = {0}")]
    Pole(f64),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("non-finite sample at node {index}")]
    NonFinite { index: usize },

    #[error("series did not converge within {kmax} terms (a = {a}, b = {b}, z = {z})")]
    NonConvergence { a: f64, b: f64, z: f64, kmax: usize },

    #[error("quadrature did not reach tolerance: estimated error {0:e}")]
    Quadrature(f64),

    #[error("extended basis exceeds the cap of {cap} (requested {requested})")]
    Overflow { cap: usize, requested: usize },

    #[error("subspace is not invariant under the operator: {0}")]
    NotInvariant(String),

    #[error("alpha = 1/2 is singular for the similarity solution (Γ(1-2α) has a pole)")]
    SingularAlpha,

    #[error("alpha = 1 is an integer order; the similarity solution needs the ordinary equation")]
    IntegerAlpha,

    #[error("invariance condition 16ν - 4β + γ = 0 violated (value {0})")]
    Condition(f64),

    #[error("degenerate solution: {0}")]
    Degenerate(String),

    #[error("sample (x = {x}, t = {t}) leaves the compact support")]
    Support { x: f64, t: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
