//! Eigenstructure over splitting fields.

use super::{charpoly, left_nullspace, right_nullspace, Mat};
use crate::error::{Error, Result};
use crate::gf::{factor, roots_in, splitting_degree, Elem, Field};

/// One eigenvalue with its multiplicities and eigenspace bases.
#[derive(Clone, Debug)]
pub struct EigenItem {
    pub eigenvalue: Elem,
    pub algebraic_mult: usize,
    pub geometric_mult: usize,
    /// Row vectors `u` with `uM = λu`, reduced echelon form.
    pub left_basis: Vec<Mat>,
    /// Column vectors `v` with `Mv = λv`, reduced echelon form.
    pub right_basis: Vec<Mat>,
}

/// All eigenvalues of a square matrix in a field containing them.
///
/// Items follow the canonical order of the irreducible factors of the
/// characteristic polynomial, and within one factor the roots are ordered
/// by coefficient vector.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub matrix_dim: usize,
    pub splitting_field: Field,
    pub items: Vec<EigenItem>,
}

impl EigenData {
    pub fn eigenvalues(&self) -> Vec<Elem> {
        self.items.iter().map(|it| it.eigenvalue).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.items.iter().all(|it| it.geometric_mult == 1)
    }
}

/// Degree over the prime field of the splitting field of `charpoly(m)`.
pub fn splitting_degree_of(m: &Mat) -> Result<u32> {
    splitting_degree(&charpoly(m)?)
}

/// Eigen data in the canonical splitting field of the characteristic
/// polynomial.
pub fn eigen_data(m: &Mat) -> Result<EigenData> {
    let l = splitting_degree_of(m)?;
    let ext = Field::galois(m.field().characteristic() as u64, l)?;
    eigen_data_in(m, &ext)
}

/// Eigen data computed inside `ext`, which must contain the field of `m`
/// and every root of its characteristic polynomial.
pub fn eigen_data_in(m: &Mat, ext: &Field) -> Result<EigenData> {
    let n = m.require_square()?;
    let chi = charpoly(m)?;
    let lifted = m.embed_into(ext)?;
    let mut items = Vec::new();
    for (g, mult) in factor(&chi)? {
        let roots = roots_in(&g, ext)?;
        if roots.len() != g.degree().unwrap_or(0) {
            return Err(Error::NotSplit);
        }
        for (lambda, _) in roots {
            let shifted = lifted.shifted(lambda)?;
            let right_basis = right_nullspace(&shifted);
            let left_basis = left_nullspace(&shifted);
            items.push(EigenItem {
                eigenvalue: lambda,
                algebraic_mult: mult,
                geometric_mult: right_basis.len(),
                left_basis,
                right_basis,
            });
        }
    }
    Ok(EigenData {
        matrix_dim: n,
        splitting_field: ext.clone(),
        items,
    })
}

impl Mat {
    pub fn eigen_data(&self) -> Result<EigenData> {
        eigen_data(self)
    }
}
