use crate::error::{Error, Result};
use crate::gf::{roots_in, Field};
use crate::linalg::{charpoly, minpoly, rank, splitting_degree_of, Mat};

/// Both rank conditions for `(H, K)`: the Krylov matrix
/// `[K HK ... H^{d-1}K]` has full row rank, and `[λI - H  K]` has full row
/// rank for every eigenvalue `λ` of `H`.
pub fn pbh_sides(h: &Mat, k: &Mat, d: usize) -> Result<(bool, bool)> {
    let p = h.require_square()?;
    if k.rows() != p {
        return Err(Error::DimensionMismatch(format!(
            "K has {} rows, H is {p}x{p}",
            k.rows()
        )));
    }
    if h.field() != k.field() {
        return Err(Error::FieldMismatch);
    }
    let min = minpoly(h)?.degree().unwrap_or(0);
    if d < min {
        return Err(Error::DTooSmall { d, min });
    }

    let mut krylov = Mat::zeros(h.field(), p, 0);
    let mut block = k.clone();
    for _ in 0..d {
        krylov = krylov.hstack(&block)?;
        block = h.mul(&block)?;
    }
    let krylov_full = rank(&krylov) == p;

    let ext = Field::galois(h.field().characteristic() as u64, splitting_degree_of(h)?)?;
    let h_ext = h.embed_into(&ext)?;
    let k_ext = k.embed_into(&ext)?;
    let mut pencil_full = true;
    for (lambda, _) in roots_in(&charpoly(h)?, &ext)? {
        if rank(&h_ext.shifted(lambda)?.hstack(&k_ext)?) < p {
            pencil_full = false;
            break;
        }
    }
    Ok((krylov_full, pencil_full))
}

/// The shared truth value of the two rank conditions of [`pbh_sides`].
/// Disagreement is reported as [`Error::LemmaViolation`].
pub fn pbh_test(h: &Mat, k: &Mat, d: usize) -> Result<bool> {
    let (krylov, pencil) = pbh_sides(h, k, d)?;
    if krylov != pencil {
        return Err(Error::LemmaViolation(format!(
            "Krylov rank full: {krylov}, eigenvalue pencils full: {pencil}"
        )));
    }
    Ok(krylov)
}
