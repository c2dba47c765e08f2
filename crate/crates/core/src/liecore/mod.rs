//! Lie algebras as exact structure-constant tables: brackets, the Killing form,
//! centralizers and normalizers, Cartan subalgebras, simple ideals and types.

mod algebra;
mod cartan;
mod classify;
mod ideals;
mod killing;

pub use algebra::LieAlgebra;
pub use cartan::{centralizer, diagonal_torus, find_cartan, is_cartan, normalizer, CartanInfo, RootData};
pub use classify::{identify_type, SimpleType, TypeLabel, TypeReport};
pub use ideals::{centroid_dimension, simple_ideals, Centroid};
pub use killing::{invariance_witness, killing, BilinearForm};

#[cfg(test)]
pub(crate) use algebra::tests::sl2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("subspace is not closed under the bracket (basis pair {i}, {j})")]
    NotClosed { i: usize, j: usize },
    #[error("Killing form is degenerate")]
    DegenerateKilling,
    #[error("no Cartan subalgebra found after {0} random elements")]
    NoCartan(u64),
    #[error("could not split the algebra into simple ideals")]
    CannotSplit,
    #[error("algebra of dimension {0} is too large for a direct centroid computation")]
    TooLarge(usize),
    #[error("no simple type of dimension {dim} and rank {rank} matches the root data")]
    Unclassified { dim: usize, rank: usize },
}
