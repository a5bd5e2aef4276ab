use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use super::embed::Embedding;
use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Checked constructor: rejects coefficients from another field.
    pub fn try_new(field: &Field, coeffs: Vec<Elem>) -> Result<Poly> {
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::new(field, coeffs))
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, below_degree: usize, rng: &mut R) -> Poly {
        Poly::new(
            field,
            (0..below_degree).map(|_| field.random(rng)).collect(),
        )
    }

    pub fn random_monic<R: Rng + ?Sized>(field: &Field, degree: usize, rng: &mut R) -> Poly {
        let mut c: Vec<Elem> = (0..degree).map(|_| field.random(rng)).collect();
        c.push(field.one());
        Poly::new(field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; fails with `InvalidArgument` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) if l != self.field.one() => {
                self.scale(self.field.inv(l).expect("nonzero leading coefficient"))
            }
            _ => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(other)?;
        Ok(self.exact_div(&g)?.mul(other)?.monic())
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Evaluates at `a`, which may live in this polynomial's field or in any
    /// extension of it (coefficients are embedded first).
    pub fn eval(&self, a: Elem) -> Result<Elem> {
        if self.field.contains(a) {
            return Ok(self.eval_in(&self.field, &self.coeffs, a));
        }
        let target = Field::from_id(a.field_id()).ok_or(Error::FieldMismatch)?;
        let lifted = self.embed_into(&target)?;
        Ok(lifted.eval_in(&target, &lifted.coeffs, a))
    }

    fn eval_in(&self, f: &Field, coeffs: &[Elem], a: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Image of this polynomial under the canonical embedding of its field
    /// into `target`.
    pub fn embed_into(&self, target: &Field) -> Result<Poly> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let e = Embedding::new(&self.field, target)?;
        Ok(Poly::new(
            target,
            self.coeffs.iter().map(|&c| e.apply(c)).collect(),
        ))
    }

    /// `self * other mod m`.
    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(other)?.rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Canonical order: by degree, then coefficient vectors compared from the
    /// constant term upward, each element compared by its own coefficient
    /// vector from the constant term upward.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (&a, &b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = self.field.coeffs(a).cmp(&other.field.coeffs(b));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.fmt_elem(c);
            let one = c == self.field.one();
            match (i, one) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{cs}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({}; {:?})", self, self.field)
    }
}
