//! Exact arithmetic in ℚ and in the cyclotomic fields ℚ(ζ₃), ℚ(ζ₅).

mod cyclotomic;
mod rational;

pub use cyclotomic::{cyc_inv, cyc_make, cyc_mul, Conductor, FieldElem};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("unsupported conductor {0} (expected 1, 3 or 5)")]
    UnsupportedConductor(u32),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("coefficient vector for m={m} has length {got}, expected {expected}")]
    BadLength { m: u32, expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed integer {0:?}")]
    Parse(String),
}
