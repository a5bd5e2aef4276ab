use super::condition::condition_c;
use crate::error::{Error, Result};
use crate::linalg::{is_cyclic, Mat};

/// For 2x2 `A`, `B` and `S = I`: whether `AB - BA` is invertible, and
/// whether both matrices are cyclic with the eigenvector condition holding.
/// No agreement check is made.
pub fn commutator_2x2_sides(a: &Mat, b: &Mat) -> Result<(bool, bool)> {
    if [a.rows(), a.cols(), b.rows(), b.cols()] != [2; 4] {
        return Err(Error::Not2x2);
    }
    let comm = a.mul(b)?.sub(&b.mul(a)?)?;
    let invertible = !comm.det()?.is_zero();
    let cyclic_and_c =
        is_cyclic(a)? && is_cyclic(b)? && condition_c(a, b, &Mat::identity(a.field(), 2))?.holds;
    Ok((invertible, cyclic_and_c))
}

/// [`commutator_2x2_sides`], failing with [`Error::PropositionViolation`]
/// when the two sides differ.
pub fn commutator_2x2_test(a: &Mat, b: &Mat) -> Result<(bool, bool)> {
    let sides = commutator_2x2_sides(a, b)?;
    if sides.0 != sides.1 {
        return Err(Error::PropositionViolation);
    }
    Ok(sides)
}
