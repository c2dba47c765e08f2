//! Exact linear algebra over ℚ(ζ_m): sparse vectors and matrices, echelon
//! forms, kernels, solves and eigenspace decompositions of finite-order operators.

mod echelon;
mod eigen;
mod matrix;
mod modular;
mod sparse;

pub use echelon::{
    determinant, inverse, kernel, kernel_from_echelon, kernel_of_rows, rank, solve, EchelonBasis, Subspace,
};
pub use eigen::{eigenspace, simultaneous_eigenspaces, EigenDecomposition};
pub use matrix::Matrix;
pub use modular::{certainly_invertible, reduce_mod_q};
pub use sparse::{Accumulator, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("operator {index} does not satisfy M^{p} = I")]
    WrongOrder { index: usize, p: u32 },
    #[error("operator {index} is not diagonalizable over the field")]
    NotDiagonalizable { index: usize },
    #[error("root of unity is not primitive of order {0}")]
    BadRoot(u32),
}
