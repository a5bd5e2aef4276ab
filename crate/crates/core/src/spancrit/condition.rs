use super::span::{build_r, triple_dims};
use crate::error::Result;
use crate::gf::{lcm, Elem, Field};
use crate::linalg::{eigen_data_in, is_cyclic, rank, splitting_degree_of, EigenData, Mat};

/// A left eigenvector `u` of `A` and a right eigenvector `v` of `B` with
/// `uSv = 0`, all over `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub alpha: Elem,
    pub beta: Elem,
    /// `1 x m` row vector.
    pub u: Mat,
    /// `n x 1` column vector.
    pub v: Mat,
    pub value_usv: Elem,
    pub field: Field,
}

impl Witness {
    /// Re-checks `u != 0`, `v != 0`, `uA = αu`, `Bv = βv` and `uSv = 0`.
    pub fn verify(&self, a: &Mat, b: &Mat, s: &Mat) -> Result<bool> {
        let ext = &self.field;
        let (a, b, s) = (a.embed_into(ext)?, b.embed_into(ext)?, s.embed_into(ext)?);
        let usv = self.u.mul(&s)?.mul(&self.v)?.get(0, 0);
        Ok(!self.u.is_zero()
            && !self.v.is_zero()
            && self.u.mul(&a)? == self.u.scale(self.alpha)
            && b.mul(&self.v)? == self.v.scale(self.beta)
            && usv == self.value_usv
            && usv.is_zero())
    }
}

/// Outcome of the eigenvector condition: it holds exactly when no witness
/// exists.
#[derive(Clone, Debug)]
pub struct ConditionC {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Full verdict on a triple `(A, B, S)`.
#[derive(Clone, Debug)]
pub struct SpanReport {
    pub m: usize,
    pub n: usize,
    pub span_dim: usize,
    pub spans_full: bool,
    pub a_cyclic: bool,
    pub b_cyclic: bool,
    pub condition_c: bool,
    pub witness: Option<Witness>,
    pub consistency_ok: bool,
}

/// The smallest canonical field holding every eigenvalue of `a` and `b`.
pub fn common_splitting_field(a: &Mat, b: &Mat) -> Result<Field> {
    let l = lcm(
        splitting_degree_of(a)? as u64,
        splitting_degree_of(b)? as u64,
    );
    Field::galois(a.field().characteristic() as u64, l as u32)
}

/// Whether `uSv != 0` for every left eigenvector `u` of `A` and right
/// eigenvector `v` of `B`, over the common splitting field.
pub fn condition_c(a: &Mat, b: &Mat, s: &Mat) -> Result<ConditionC> {
    triple_dims(a, b, s)?;
    let ext = common_splitting_field(a, b)?;
    let ea = eigen_data_in(a, &ext)?;
    let eb = eigen_data_in(b, &ext)?;
    condition_c_from(&ea, &eb, s)
}

/// [`condition_c`] from eigen data computed in one common field.
pub fn condition_c_from(ea: &EigenData, eb: &EigenData, s: &Mat) -> Result<ConditionC> {
    let ext = ea.splitting_field.clone();
    let s = s.embed_into(&ext)?;
    let (Some(first_a), Some(first_b)) = (ea.items.first(), eb.items.first()) else {
        return Ok(ConditionC {
            holds: true,
            witness: None,
        });
    };
    let pair = |u: Mat, alpha: Elem, v: Mat, beta: Elem| -> Result<ConditionC> {
        let value_usv = u.mul(&s)?.mul(&v)?.get(0, 0);
        let witness = Witness {
            alpha,
            beta,
            u,
            v,
            value_usv,
            field: ext.clone(),
        };
        Ok(ConditionC {
            holds: false,
            witness: Some(witness),
        })
    };

    // a derogatory eigenspace always contains a vector killing the
    // functional, so a witness exists without checking pairs
    if let Some(item) = ea.items.iter().find(|it| it.left_basis.len() >= 2) {
        let v = first_b.right_basis[0].clone();
        let sv = s.mul(&v)?;
        let u = kernel_vector(&item.left_basis, |w| Ok(w.mul(&sv)?.get(0, 0)))?;
        return pair(u, item.eigenvalue, v, first_b.eigenvalue);
    }
    if let Some(item) = eb.items.iter().find(|it| it.right_basis.len() >= 2) {
        let u = first_a.left_basis[0].clone();
        let us = u.mul(&s)?;
        let v = kernel_vector(&item.right_basis, |w| Ok(us.mul(w)?.get(0, 0)))?;
        return pair(u, first_a.eigenvalue, v, item.eigenvalue);
    }

    for ia in &ea.items {
        let us = ia.left_basis[0].mul(&s)?;
        for ib in &eb.items {
            if us.mul(&ib.right_basis[0])?.get(0, 0).is_zero() {
                return pair(
                    ia.left_basis[0].clone(),
                    ia.eigenvalue,
                    ib.right_basis[0].clone(),
                    ib.eigenvalue,
                );
            }
        }
    }
    Ok(ConditionC {
        holds: true,
        witness: None,
    })
}

/// A nonzero vector in the span of `basis` (at least two independent
/// vectors) annihilated by the linear functional `g`.
fn kernel_vector(basis: &[Mat], g: impl Fn(&Mat) -> Result<Elem>) -> Result<Mat> {
    let c0 = g(&basis[0])?;
    if c0.is_zero() {
        return Ok(basis[0].clone());
    }
    let c1 = g(&basis[1])?;
    if c1.is_zero() {
        return Ok(basis[1].clone());
    }
    basis[0].scale(c1).sub(&basis[1].scale(c0))
}

/// Evaluates the rank side and the cyclicity/eigenvector side separately
/// and records whether they agree.
pub fn theorem1_verdict(a: &Mat, b: &Mat, s: &Mat) -> Result<SpanReport> {
    theorem1_verdict_with(a, b, s, rank)
}

/// [`theorem1_verdict`] with a caller-supplied rank routine for the span
/// dimension.
pub fn theorem1_verdict_with(
    a: &Mat,
    b: &Mat,
    s: &Mat,
    rank_fn: fn(&Mat) -> usize,
) -> Result<SpanReport> {
    let (m, n) = triple_dims(a, b, s)?;
    let span_dim = rank_fn(&build_r(a, b, s)?);
    let a_cyclic = is_cyclic(a)?;
    let b_cyclic = is_cyclic(b)?;
    let cc = condition_c(a, b, s)?;
    Ok(assemble(m, n, span_dim, a_cyclic, b_cyclic, cc))
}

pub(crate) fn assemble(
    m: usize,
    n: usize,
    span_dim: usize,
    a_cyclic: bool,
    b_cyclic: bool,
    cc: ConditionC,
) -> SpanReport {
    let spans_full = span_dim == m * n;
    let consistency_ok = spans_full == (a_cyclic && b_cyclic && cc.holds);
    SpanReport {
        m,
        n,
        span_dim,
        spans_full,
        a_cyclic,
        b_cyclic,
        condition_c: cc.holds,
        witness: cc.witness,
        consistency_ok,
    }
}
