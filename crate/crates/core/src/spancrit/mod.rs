//! Criteria for `{A^i S B^j}` to span the space of `m x n` matrices.
//!
//! The span dimension is the rank of [`build_r`]. [`theorem1_verdict`]
//! computes it alongside the structural side: both `A` and `B` cyclic and
//! `uSv != 0` for every left eigenvector `u` of `A` and right eigenvector
//! `v` of `B`. The two sides must agree, and a disagreement is reported in
//! [`SpanReport::consistency_ok`] rather than hidden.
//!
//! Eigenvectors are taken over the smallest common splitting field of the
//! two characteristic polynomials.

mod condition;
mod diagonal;
mod irreducible;
mod pbh;
mod span;
mod tbt;

pub use condition::{
    common_splitting_field, condition_c, condition_c_from, theorem1_verdict, theorem1_verdict_with,
    ConditionC, SpanReport, Witness,
};
pub use diagonal::{eigenvector_matrices, gdsm_dimension, rabs_identity_check};
pub use irreducible::{irreducible_criterion, kron_eigenvalue_set, psi_apply, psi_matrix};
pub use pbh::{pbh_sides, pbh_test};
pub use span::{build_r, span_dimension, span_dimension_with, spans_full};
pub use tbt::{commutator_2x2_sides, commutator_2x2_test};

pub(crate) use condition::assemble;

use crate::gf::Field;
use crate::linalg::Mat;

/// The shift instance: `A` has ones on the subdiagonal, `B` ones on the
/// superdiagonal, and `S = E_{0,0}`. Then `A^i S B^j = E_{i,j}`.
pub fn shift_example(field: &Field, m: usize, n: usize) -> (Mat, Mat, Mat) {
    let one = field.one();
    let zero = field.zero();
    let a = Mat::from_fn(field, m, m, |i, j| if i == j + 1 { one } else { zero });
    let b = Mat::from_fn(field, n, n, |i, j| if j == i + 1 { one } else { zero });
    let s = Mat::unit(field, m, n, 0, 0);
    (a, b, s)
}

#[cfg(test)]
mod tests;
