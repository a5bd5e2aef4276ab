use super::span::triple_dims;
use crate::error::{Error, Result};
use crate::gf::{gcd, is_irreducible, lcm, roots_in, Elem, Field, Poly};
use crate::linalg::{charpoly, Mat};

fn irreducible_charpoly(m: &Mat) -> Result<Poly> {
    let chi = charpoly(m)?;
    if !is_irreducible(&chi)? {
        return Err(Error::NotIrreducible(chi.to_string()));
    }
    Ok(chi)
}

/// For `A`, `B` with irreducible characteristic polynomials: whether every
/// nonzero `S` gives a full span, which happens exactly when
/// `gcd(m, n) = 1`.
pub fn irreducible_criterion(a: &Mat, b: &Mat) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    irreducible_charpoly(a)?;
    irreducible_charpoly(b)?;
    Ok(gcd(a.rows() as u64, b.rows() as u64) == 1)
}

fn check_z(z: &Mat, a: &Mat, b: &Mat) -> Result<(usize, usize)> {
    let m = a.require_square()?;
    let n = b.require_square()?;
    if z.rows() != m || z.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Z is {}x{}, expected {m}x{n}",
            z.rows(),
            z.cols()
        )));
    }
    if z.field() != a.field() || a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok((m, n))
}

/// `ψ(Z) = Σ z_ij A^i S B^j` over `0 <= i < m`, `0 <= j < n`.
pub fn psi_apply(z: &Mat, a: &Mat, b: &Mat, s: &Mat) -> Result<Mat> {
    let (m, n) = check_z(z, a, b)?;
    triple_dims(a, b, s)?;
    let a_pows = a.powers(m)?;
    let mut acc = Mat::zeros(a.field(), m, n);
    let mut sb = s.clone();
    for j in 0..n {
        for (i, ai) in a_pows.iter().enumerate() {
            let c = z.get(i, j);
            if !c.is_zero() {
                acc = acc.add(&ai.mul(&sb)?.scale(c))?;
            }
        }
        sb = sb.mul(b)?;
    }
    Ok(acc)
}

/// `M = Σ z_ij (B^j)^T ⊗ A^i`, so that `vec(ψ(Z)) = M vec(S)`.
pub fn psi_matrix(z: &Mat, a: &Mat, b: &Mat) -> Result<Mat> {
    let (m, n) = check_z(z, a, b)?;
    let a_pows = a.powers(m)?;
    let b_pows = b.powers(n)?;
    let mut acc = Mat::zeros(a.field(), m * n, m * n);
    for (j, bj) in b_pows.iter().enumerate() {
        let bt = bj.transpose();
        for (i, ai) in a_pows.iter().enumerate() {
            let c = z.get(i, j);
            if !c.is_zero() {
                acc = acc.add(&bt.kron(ai)?.scale(c))?;
            }
        }
    }
    Ok(acc)
}

/// The values `Σ z_ij α^i β^j` over all eigenvalues `α` of `A` and `β` of
/// `B` (`α` outer, `β` inner, each in root order), computed in the common
/// splitting field, which is returned alongside. Both characteristic
/// polynomials must be irreducible.
pub fn kron_eigenvalue_set(z: &Mat, a: &Mat, b: &Mat) -> Result<(Field, Vec<Elem>)> {
    let (m, n) = check_z(z, a, b)?;
    let chi_a = irreducible_charpoly(a)?;
    let chi_b = irreducible_charpoly(b)?;
    let base = a.field();
    let l = lcm(
        base.degree() as u64 * m as u64,
        base.degree() as u64 * n as u64,
    );
    let ext = Field::galois(base.characteristic() as u64, l as u32)?;
    let z = z.embed_into(&ext)?;
    let alphas = roots_in(&chi_a, &ext)?;
    let betas = roots_in(&chi_b, &ext)?;
    let mut out = Vec::with_capacity(m * n);
    for &(alpha, _) in &alphas {
        for &(beta, _) in &betas {
            let mut acc = ext.zero();
            for i in 0..m {
                for j in 0..n {
                    let term = ext.mul(ext.pow(alpha, i as u64), ext.pow(beta, j as u64));
                    acc = ext.add(acc, ext.mul(z.get(i, j), term));
                }
            }
            out.push(acc);
        }
    }
    Ok((ext, out))
}
