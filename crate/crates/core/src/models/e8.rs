//! The ℤ₅-graded model of E8 on two 5-dimensional spaces.

use super::skeleton::{Factor, ScalarSlot, SlotTarget, TensorSkeleton};
use super::solver::solve_scalars;
use super::{BuiltModel, ModelError};

fn gauge() -> Vec<ScalarSlot> {
    let c = |i, j| ScalarSlot { i, j, target: SlotTarget::Component };
    vec![c(1, 1), c(1, 2), c(1, 3), ScalarSlot { i: 1, j: 4, target: SlotTarget::Sl(0) }]
}

/// g_d = Λ^d V1 ⊗ Λ^{2d mod 5} V2.
pub fn e8_skeleton() -> TensorSkeleton {
    let ext = |space, k| Factor::Ext { space, k };
    TensorSkeleton {
        name: "E8/Z5".into(),
        p: 5,
        spaces: vec![("V1".into(), 5), ("V2".into(), 5)],
        components: (1..5).map(|d| vec![ext(0, d), ext(1, (2 * d) % 5)]).collect(),
        gauge: gauge(),
    }
}

/// The E8 skeleton with g_2 replaced by Λ²V1 ⊗ V2; no Lie algebra fits it.
pub fn corrupted_e8_skeleton() -> TensorSkeleton {
    let mut s = e8_skeleton();
    s.name = "E8/Z5 (corrupted)".into();
    s.components[1] = vec![Factor::Ext { space: 0, k: 2 }, Factor::Ext { space: 1, k: 1 }];
    s
}

pub fn build_e8() -> Result<BuiltModel, ModelError> {
    BuiltModel::from_solution(e8_skeleton(), solve_scalars(&e8_skeleton())?)
}
