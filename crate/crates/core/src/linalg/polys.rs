//! Characteristic and minimal polynomials, cyclicity, and polynomial
//! evaluation at a matrix.

use super::{right_nullspace, Mat};
use crate::error::{Error, Result};
use crate::gf::Poly;

/// Upper Hessenberg form similar to `m`.
fn hessenberg(m: &Mat) -> Mat {
    let f = m.field().clone();
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for r in 0..n {
                let (a, b) = (h.get(r, piv), h.get(r, j + 1));
                h.set(r, piv, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
        for i in j + 2..n {
            let t = f.mul(h.get(i, j), inv);
            if t.is_zero() {
                continue;
            }
            h.row_axpy(i, j + 1, f.neg(t), 0);
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), f.mul(t, h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    h
}

/// `det(sI - M)` via Hessenberg reduction and the Hessenberg determinant
/// recurrence.
pub fn charpoly(m: &Mat) -> Result<Poly> {
    let n = m.require_square()?;
    let f = m.field();
    let h = hessenberg(m);
    let x = Poly::x(f);
    let mut p: Vec<Poly> = Vec::with_capacity(n + 1);
    p.push(Poly::one(f));
    for k in 1..=n {
        let lin = x.sub(&Poly::constant(f, h.get(k - 1, k - 1)))?;
        let mut pk = lin.mul(&p[k - 1])?;
        let mut sub_prod = f.one();
        for i in 1..k {
            sub_prod = f.mul(sub_prod, h.get(k - i, k - i - 1));
            let c = f.mul(h.get(k - 1 - i, k - 1), sub_prod);
            if !c.is_zero() {
                pk = pk.sub(&p[k - 1 - i].scale(c))?;
            }
        }
        p.push(pk);
    }
    Ok(p.pop().expect("nonempty"))
}

/// Minimal polynomial: the lcm over standard basis vectors `e` of the
/// minimal monic relation among `e, Me, M^2 e, ...`.
pub fn minpoly(m: &Mat) -> Result<Poly> {
    let n = m.require_square()?;
    let f = m.field();
    let mut acc = Poly::one(f);
    for k in 0..n {
        let mut krylov = Mat::unit(f, n, 1, k, 0);
        let mut cur = krylov.clone();
        loop {
            let next = m.mul(&cur)?;
            let extended = krylov.hstack(&next)?;
            if extended.rank() < extended.cols() {
                let null = right_nullspace(&extended);
                let v = null.last().expect("dependent columns");
                // the last coordinate is nonzero because the earlier
                // columns are independent
                let t = v.rows() - 1;
                let lead = f.inv(v.get(t, 0))?;
                let coeffs = (0..=t).map(|i| f.mul(v.get(i, 0), lead)).collect();
                acc = acc.lcm(&Poly::new(f, coeffs))?;
                break;
            }
            krylov = extended;
            cur = next;
        }
    }
    Ok(acc)
}

/// Horner evaluation `f(M)`.
pub fn poly_at_matrix(f: &Poly, m: &Mat) -> Result<Mat> {
    let n = m.require_square()?;
    if f.field() != m.field() {
        return Err(Error::FieldMismatch);
    }
    let field = m.field();
    let mut acc = Mat::zeros(field, n, n);
    let id = Mat::identity(field, n);
    for &c in f.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&id.scale(c))?;
    }
    Ok(acc)
}

/// `minpoly(M) == charpoly(M)`.
pub fn is_cyclic(m: &Mat) -> Result<bool> {
    Ok(minpoly(m)? == charpoly(m)?)
}

impl Mat {
    pub fn charpoly(&self) -> Result<Poly> {
        charpoly(self)
    }

    pub fn minpoly(&self) -> Result<Poly> {
        minpoly(self)
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        is_cyclic(self)
    }
}
