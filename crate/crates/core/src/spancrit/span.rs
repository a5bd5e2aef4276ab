use crate::error::{Error, Result};
use crate::linalg::{rank, Mat};

/// Checks the shapes of a triple and returns `(m, n)`.
pub(crate) fn triple_dims(a: &Mat, b: &Mat, s: &Mat) -> Result<(usize, usize)> {
    let m = a.require_square()?;
    let n = b.require_square()?;
    if s.rows() != m || s.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "S is {}x{} but A is {m}x{m} and B is {n}x{n}",
            s.rows(),
            s.cols()
        )));
    }
    if a.field() != b.field() || a.field() != s.field() {
        return Err(Error::FieldMismatch);
    }
    Ok((m, n))
}

/// The `mn x mn` matrix whose column `i + m*j` is `vec(A^i S B^j)`.
pub fn build_r(a: &Mat, b: &Mat, s: &Mat) -> Result<Mat> {
    let (m, n) = triple_dims(a, b, s)?;
    let f = a.field();
    let a_pows = a.powers(m)?;
    let mut r = Mat::zeros(f, m * n, m * n);
    let mut sb = s.clone();
    for j in 0..n {
        for (i, ai) in a_pows.iter().enumerate() {
            let col = ai.mul(&sb)?.vec();
            for row in 0..m * n {
                r.set(row, i + m * j, col.get(row, 0));
            }
        }
        sb = sb.mul(b)?;
    }
    Ok(r)
}

/// `dim span{A^i S B^j : i, j >= 0}`, which is the rank of [`build_r`].
pub fn span_dimension(a: &Mat, b: &Mat, s: &Mat) -> Result<usize> {
    span_dimension_with(a, b, s, rank)
}

/// [`span_dimension`] with a caller-supplied rank routine.
pub fn span_dimension_with(a: &Mat, b: &Mat, s: &Mat, rank_fn: fn(&Mat) -> usize) -> Result<usize> {
    Ok(rank_fn(&build_r(a, b, s)?))
}

/// Whether `{A^i S B^j}` spans the whole space of `m x n` matrices.
pub fn spans_full(a: &Mat, b: &Mat, s: &Mat) -> Result<bool> {
    let (m, n) = triple_dims(a, b, s)?;
    Ok(span_dimension(a, b, s)? == m * n)
}
