//! Graded models of exceptional Lie algebras: tensor skeletons with bracket
//! scalars fixed by the Jacobi identity, the F4 fixed-point subalgebra, and
//! operator algebras of the octonions.

mod e6;
mod e8;
pub mod exterior;
mod f4;
mod octonion;
mod skeleton;
mod solver;

pub use e6::{build_e6, e6_skeleton};
pub use e8::{build_e8, corrupted_e8_skeleton, e8_skeleton};
pub use f4::{build_f4, f4_skeleton, permutation_violation, tau_permutation, F4Model};
pub use octonion::{
    build_d4, build_g2, cayley_dickson, derivation_algebra, induced_grading_on_maps, octonion_algebra,
    skew_algebra, Algebra, OctonionAlgebra, OctonionModel, OperatorAlgebra,
};
pub use skeleton::{
    canonical_invariant_map, degree_zero_action, BilinearMap, Factor, Layout, ScalarSlot, SlotTarget,
    TensorSkeleton,
};
pub use solver::{solve_scalars, Solution};

use crate::exactla::{LinAlgError, SparseVec};
use crate::field::FieldElem;
use crate::liecore::{LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("malformed skeleton: {0}")]
    Skeleton(String),
    #[error("slot {0} is not declared by the skeleton")]
    UndeclaredSlot(String),
    #[error("no solution: {reason}{}", witness.map(|w| format!(" (first violated triple {w:?})")).unwrap_or_default())]
    NoSolution { reason: String, witness: Option<[usize; 3]> },
    #[error("grading violated: [x{i}, x{j}] leaves degree {target}")]
    NotGraded { i: usize, j: usize, target: u32 },
    #[error("{0}")]
    Automorphism(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A built algebra with its ℤ_p degree map.
#[derive(Clone, Debug)]
pub struct BuiltModel {
    pub name: String,
    pub p: u32,
    pub algebra: LieAlgebra,
    pub degrees: Vec<u32>,
    pub scalars: Vec<(ScalarSlot, FieldElem)>,
}

impl BuiltModel {
    pub(crate) fn from_solution(skel: TensorSkeleton, sol: Solution) -> Result<BuiltModel, ModelError> {
        let model = BuiltModel {
            name: skel.name.clone(),
            p: skel.p,
            algebra: sol.algebra,
            degrees: sol.degrees,
            scalars: sol.values,
        };
        model.check_graded()?;
        Ok(model)
    }

    /// Dimensions of the degree components 0, …, p − 1.
    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.p as usize];
        for &d in &self.degrees {
            dims[d as usize] += 1;
        }
        dims
    }

    /// Checks [g_i, g_j] ⊆ g_{i+j} on every basis pair.
    pub fn check_graded(&self) -> Result<(), ModelError> {
        graded_violation(&self.algebra, &self.degrees, self.p)
            .map_or(Ok(()), |(i, j, target)| Err(ModelError::NotGraded { i, j, target }))
    }
}

/// First basis pair whose bracket leaves the expected degree.
pub fn graded_violation(l: &LieAlgebra, degrees: &[u32], p: u32) -> Option<(usize, usize, u32)> {
    l.nonzero_brackets().find_map(|(i, j, v): (usize, usize, &SparseVec)| {
        let target = (degrees[i] + degrees[j]) % p;
        v.iter().any(|(k, _)| degrees[k] != target).then_some((i, j, target))
    })
}
