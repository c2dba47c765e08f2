//! Certificates for graded models: grading compatibility, line subalgebras,
//! Cartan and orthogonality checks, and Jacobi sweeps.

mod certificate;
mod grading;

pub use certificate::{
    grading_compat, jacobi_sweep, jordan_certificate, line_subalgebras, projective_points, Certificate,
    Check, JacobiMode,
};
pub use grading::{add, group_elements, is_zero, neg, scale, Grading, GroupElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("malformed grading: {0}")]
    Malformed(String),
    #[error(
        "components do not form a direct sum: dims add to {total}, span has rank {rank}, ambient {ambient}"
    )]
    NotDirect { total: usize, rank: usize, ambient: usize },
    #[error("the zero component is nonzero")]
    NonzeroIdentityComponent,
}
