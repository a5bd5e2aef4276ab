use super::condition::common_splitting_field;
use super::span::{build_r, triple_dims};
use crate::error::{Error, Result};
use crate::gf::{factor, Elem, Field};
use crate::linalg::{charpoly, eigen_data_in, vandermonde, Mat};

/// The `λ` with `image = λx`, or `None` if `x` is zero or no such `λ`
/// exists.
fn recover_eigenvalue(field: &Field, x: &Mat, image: &Mat) -> Option<Elem> {
    let k = x.entries().iter().position(|e| !e.is_zero())?;
    let lambda = field.div(image.entries()[k], x.entries()[k]).ok()?;
    (image == &x.scale(lambda)).then_some(lambda)
}

/// Checks `(V^T ⊗ U) R = diag(vec(USV)) (W_B ⊗ W_A)` exactly, where the
/// rows of `U` are left eigenvectors of `A`, the columns of `V` are right
/// eigenvectors of `B`, and `W_A`, `W_B` are the row-Vandermonde matrices of
/// the corresponding eigenvalues. `U` and `V` live in a common extension of
/// the field of `A`, `B`, `S`.
pub fn rabs_identity_check(a: &Mat, b: &Mat, s: &Mat, u: &Mat, v: &Mat) -> Result<bool> {
    let (m, n) = triple_dims(a, b, s)?;
    let ext = u.field().clone();
    if v.field() != &ext {
        return Err(Error::FieldMismatch);
    }
    if u.cols() != m || v.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "U is {}x{} and V is {}x{} for m={m}, n={n}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let a_e = a.embed_into(&ext)?;
    let b_e = b.embed_into(&ext)?;
    let s_e = s.embed_into(&ext)?;

    let mut alphas = Vec::with_capacity(u.rows());
    for h in 0..u.rows() {
        let row = u.row(h);
        let lambda = recover_eigenvalue(&ext, &row, &row.mul(&a_e)?)
            .ok_or_else(|| Error::NotEigenvectors(format!("row {h} of U")))?;
        alphas.push(lambda);
    }
    let mut betas = Vec::with_capacity(v.cols());
    for k in 0..v.cols() {
        let col = v.col(k);
        let lambda = recover_eigenvalue(&ext, &col, &b_e.mul(&col)?)
            .ok_or_else(|| Error::NotEigenvectors(format!("column {k} of V")))?;
        betas.push(lambda);
    }

    let r = build_r(a, b, s)?.embed_into(&ext)?;
    let lhs = v.transpose().kron(u)?.mul(&r)?;
    let usv = u.mul(&s_e)?.mul(v)?.vec();
    let w = vandermonde(&ext, &betas, n).kron(&vandermonde(&ext, &alphas, m))?;
    let rhs = Mat::diag(&ext, usv.entries()).mul(&w)?;
    Ok(lhs == rhs)
}

/// Left eigenvector matrix `U` of `A` (rows) and right eigenvector matrix
/// `V` of `B` (columns), one canonical generator per eigenvalue, over the
/// common splitting field. Both are square and invertible exactly when the
/// characteristic polynomials are square-free.
pub fn eigenvector_matrices(a: &Mat, b: &Mat) -> Result<(Mat, Mat)> {
    let ext = common_splitting_field(a, b)?;
    let ea = eigen_data_in(a, &ext)?;
    let eb = eigen_data_in(b, &ext)?;
    let rows: Vec<Elem> = ea
        .items
        .iter()
        .flat_map(|it| it.left_basis[0].entries().to_vec())
        .collect();
    let u = Mat::from_vec(&ext, ea.items.len(), a.rows(), rows)?;
    let cols: Vec<&Mat> = eb.items.iter().map(|it| &it.right_basis[0]).collect();
    let v = Mat::from_fn(&ext, b.rows(), cols.len(), |i, j| cols[j].get(i, 0));
    Ok((u, v))
}

fn is_square_free_charpoly(m: &Mat) -> Result<bool> {
    Ok(factor(&charpoly(m)?)?.iter().all(|&(_, mult)| mult == 1))
}

/// Number of nonzero entries of `USV` for eigenvector matrices `U`, `V` of
/// cyclic diagonalizable `A` and `B`; this equals the span dimension.
pub fn gdsm_dimension(a: &Mat, b: &Mat, s: &Mat) -> Result<usize> {
    triple_dims(a, b, s)?;
    if !is_square_free_charpoly(a)? || !is_square_free_charpoly(b)? {
        return Err(Error::NotDiagonalizableCyclic);
    }
    let (u, v) = eigenvector_matrices(a, b)?;
    let s_e = s.embed_into(u.field())?;
    Ok(u.mul(&s_e)?.mul(&v)?.nnz())
}
