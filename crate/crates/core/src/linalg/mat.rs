use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field, Poly};

/// Dense matrix over a finite field, row-major, indices from zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Row-major integer entries, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat::from_fn(field, rows, cols, |i, j| {
            field.from_int(entries[i * cols + j])
        })
    }

    /// Row-major entries; every entry must belong to `field`.
    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&e| !field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// `E_{i,j}`: the canonical basis matrix with a single 1 at `(i, j)`.
    pub fn unit(field: &Field, rows: usize, cols: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        m.set(i, j, field.one());
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated coefficients in the last column. Its characteristic and
    /// minimal polynomials are both `f`.
    pub fn companion(f: &Poly) -> Result<Mat> {
        let n = f.degree().ok_or(Error::ZeroPolynomial)?;
        if !f.is_monic() {
            return Err(Error::InvalidArgument(
                "companion matrix needs a monic polynomial".into(),
            ));
        }
        let field = f.field();
        let mut m = Mat::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, field.neg(f.coeff(i)));
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Mat {
        Mat::from_fn(&self.field, 1, self.cols, |_, j| self.get(i, j))
    }

    pub fn col(&self, j: usize) -> Mat {
        Mat::from_fn(&self.field, self.rows, 1, |i, _| self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    /// Row-major concatenation of the canonical residue encodings; an exact
    /// and collision-free key for deduplication.
    pub fn key(&self) -> Vec<u32> {
        self.data.iter().map(|e| e.raw()).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn same_shape(&self, other: &Mat) -> Result<()> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Elem) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        let n = self.require_square()?;
        let mut acc = Mat::identity(&self.field, n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[I, M, M^2, ..., M^{k-1}]`.
    pub fn powers(&self, k: usize) -> Result<Vec<Mat>> {
        let n = self.require_square()?;
        let mut out = Vec::with_capacity(k);
        let mut cur = Mat::identity(&self.field, n);
        for _ in 0..k {
            let next = cur.mul(self)?;
            out.push(cur);
            cur = next;
        }
        Ok(out)
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(
                "hstack needs equal row counts".into(),
            ));
        }
        Ok(Mat::from_fn(
            &self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack needs equal column counts".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Kronecker product `[m_ij N]`.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        let f = &self.field;
        let (p, q) = (other.rows, other.cols);
        Ok(Mat::from_fn(f, self.rows * p, self.cols * q, |i, j| {
            f.mul(self.get(i / p, j / q), other.get(i % p, j % q))
        }))
    }

    /// Column-stacking vectorization: entry `(i, j)` goes to row `i + rows*j`.
    pub fn vec(&self) -> Mat {
        Mat::from_fn(&self.field, self.rows * self.cols, 1, |r, _| {
            self.get(r % self.rows, r / self.rows)
        })
    }

    /// Inverse of [`Mat::vec`].
    pub fn unvec(x: &Mat, rows: usize, cols: usize) -> Result<Mat> {
        if x.cols != 1 || x.rows != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot unvec a {}x{} matrix into {rows}x{cols}",
                x.rows, x.cols
            )));
        }
        Ok(Mat::from_fn(&x.field, rows, cols, |i, j| {
            x.data[i + rows * j]
        }))
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(field: &Field, entries: &[Elem]) -> Mat {
        let n = entries.len();
        Mat::from_fn(
            field,
            n,
            n,
            |i, j| if i == j { entries[i] } else { field.zero() },
        )
    }

    /// Image under the canonical embedding of this matrix's field into `target`.
    pub fn embed_into(&self, target: &Field) -> Result<Mat> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let e = Embedding::new(&self.field, target)?;
        let data = self.data.iter().map(|&a| e.apply(a)).collect();
        Ok(Mat {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `c I - self`.
    pub fn shifted(&self, c: Elem) -> Result<Mat> {
        let n = self.require_square()?;
        Mat::identity(&self.field, n).scale(c).sub(self)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<Elem> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut a = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(f.zero());
            };
            if piv != c {
                a.swap_rows(piv, c);
                det = f.neg(det);
            }
            let pv = a.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv)?;
            for r in c + 1..n {
                let t = f.mul(a.get(r, c), inv);
                if !t.is_zero() {
                    a.row_axpy(r, c, f.neg(t), c);
                }
            }
        }
        Ok(det)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] += t * row[src]` over columns `from..`.
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, t: Elem, from: usize) {
        let f = &self.field;
        for j in from..self.cols {
            let s = self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = &mut self.data[dst * self.cols + j];
                *d = f.add(*d, f.mul(t, s));
            }
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, t: Elem) {
        let f = &self.field;
        for j in 0..self.cols {
            let d = &mut self.data[r * self.cols + j];
            *d = f.mul(*d, t);
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.fmt_elem(self.get(i, j)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mat{}x{}{} over {:?}",
            self.rows, self.cols, self, self.field
        )
    }
}
