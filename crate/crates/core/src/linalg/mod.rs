//! Exact dense linear algebra over a [`Field`](crate::gf::Field): echelon
//! forms and nullspaces, Kronecker products and vectorization,
//! characteristic and minimal polynomials, and eigenstructure over
//! splitting fields.
//!
//! Empty matrices are legal; they have rank 0 and a constant
//! characteristic polynomial.

mod eigen;
mod elim;
mod mat;
mod polys;

pub use eigen::{eigen_data, eigen_data_in, splitting_degree_of, EigenData, EigenItem};
pub use elim::{left_nullspace, rank, right_nullspace, rref};
pub use mat::Mat;
pub use polys::{charpoly, is_cyclic, minpoly, poly_at_matrix};

/// Row-Vandermonde matrix whose rows are `[1, x, ..., x^{len-1}]` for each
/// `x` in `points`.
pub fn vandermonde(field: &crate::gf::Field, points: &[crate::gf::Elem], len: usize) -> Mat {
    Mat::from_fn(field, points.len(), len, |i, j| {
        field.pow(points[i], j as u64)
    })
}
