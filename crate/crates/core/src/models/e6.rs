//! The ℤ₃-graded model of E6 on three 3-dimensional spaces.

use super::skeleton::{Factor, ScalarSlot, SlotTarget, TensorSkeleton};
use super::solver::solve_scalars;
use super::{BuiltModel, ModelError};

/// g_1 = V1 ⊗ V2 ⊗ V3 and g_2 = Λ²V1 ⊗ Λ²V2 ⊗ Λ²V3, the latter standing for the duals.
pub fn e6_skeleton() -> TensorSkeleton {
    let ext = |space, k| Factor::Ext { space, k };
    TensorSkeleton {
        name: "E6/Z3".into(),
        p: 3,
        spaces: vec![("V1".into(), 3), ("V2".into(), 3), ("V3".into(), 3)],
        components: vec![vec![ext(0, 1), ext(1, 1), ext(2, 1)], vec![ext(0, 2), ext(1, 2), ext(2, 2)]],
        gauge: vec![
            ScalarSlot { i: 1, j: 1, target: SlotTarget::Component },
            ScalarSlot { i: 1, j: 2, target: SlotTarget::Sl(0) },
        ],
    }
}

pub fn build_e6() -> Result<BuiltModel, ModelError> {
    BuiltModel::from_solution(e6_skeleton(), solve_scalars(&e6_skeleton())?)
}
