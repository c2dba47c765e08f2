//! F4 as the subalgebra of the E6 model fixed by exchanging V2 and V3.

use crate::exactla::{SparseVec, Subspace};
use crate::field::FieldElem;

use super::e6::{build_e6, e6_skeleton};
use super::skeleton::{Factor, Layout, TensorSkeleton};
use super::{BuiltModel, ModelError};

/// The formal shape g_0 = sl(V1) ⊕ sl(V2), g_1 = V1 ⊗ S²V2, g_2 = Λ²V1 ⊗ S²V2.
pub fn f4_skeleton() -> TensorSkeleton {
    TensorSkeleton {
        name: "F4/Z3".into(),
        p: 3,
        spaces: vec![("V1".into(), 3), ("V2".into(), 3)],
        components: vec![
            vec![Factor::Ext { space: 0, k: 1 }, Factor::Sym2 { space: 1 }],
            vec![Factor::Ext { space: 0, k: 2 }, Factor::Sym2 { space: 1 }],
        ],
        gauge: Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct F4Model {
    pub model: BuiltModel,
    pub e6: BuiltModel,
    /// τ as a permutation of the E6 basis.
    pub tau: Vec<usize>,
    /// The fixed subalgebra inside the E6 model; its stored basis is the F4 basis.
    pub embedding: Subspace,
}

/// The basis permutation of the E6 model exchanging V2 and V3.
pub fn tau_permutation() -> Result<Vec<usize>, ModelError> {
    Layout::new(&e6_skeleton())?.space_swap(1, 2)
}

/// First basis pair on which a permutation fails to preserve brackets.
pub fn permutation_violation(l: &crate::liecore::LieAlgebra, perm: &[usize]) -> Option<(usize, usize)> {
    (0..l.dim()).find_map(|i| {
        (i + 1..l.dim())
            .find(|&j| l.basis_bracket(perm[i], perm[j]) != &l.basis_bracket(i, j).remap(|k| perm[k]))
            .map(|j| (i, j))
    })
}

pub fn build_f4() -> Result<F4Model, ModelError> {
    let e6 = build_e6()?;
    let tau = tau_permutation()?;
    if let Some((i, j)) = permutation_violation(&e6.algebra, &tau) {
        return Err(ModelError::Automorphism(format!("τ does not preserve [x{i}, x{j}]")));
    }
    let n = e6.algebra.dim();
    let orbit_sums: Vec<SparseVec> = (0..n)
        .filter(|&i| i <= tau[i])
        .map(|i| {
            if tau[i] == i {
                SparseVec::unit(i)
            } else {
                SparseVec::from_entries(vec![(i, FieldElem::one()), (tau[i], FieldElem::one())])
            }
        })
        .collect();
    let embedding = Subspace::span(n, orbit_sums.iter());
    let algebra = e6.algebra.subalgebra(&embedding)?;
    let labels = embedding
        .pivots()
        .iter()
        .map(|&p| {
            let l = &e6.algebra.labels()[p];
            if tau[p] == p {
                l.clone()
            } else {
                format!("{l}+τ")
            }
        })
        .collect();
    let degrees: Vec<u32> = embedding.pivots().iter().map(|&p| e6.degrees[p]).collect();
    let model = BuiltModel {
        name: "F4/Z3".into(),
        p: 3,
        algebra: algebra.with_labels(labels),
        degrees,
        scalars: e6.scalars.clone(),
    };
    model.check_graded()?;
    Ok(F4Model { model, e6, tau, embedding })
}
