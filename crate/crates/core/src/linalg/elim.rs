use super::Mat;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let f = m.field().clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(piv) = (row..a.rows()).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(piv, row);
        let inv = f.inv(a.get(row, c)).expect("pivot is nonzero");
        a.scale_row(row, inv);
        for r in 0..a.rows() {
            if r != row {
                let t = a.get(r, c);
                if !t.is_zero() {
                    a.row_axpy(r, row, f.neg(t), c);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (a, pivots)
}

/// Rank by forward elimination, pivoting on the first nonzero entry.
pub fn rank(m: &Mat) -> usize {
    let f = m.field().clone();
    let mut a = m.clone();
    let mut row = 0;
    for c in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(piv) = (row..a.rows()).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(piv, row);
        let inv = f.inv(a.get(row, c)).expect("pivot is nonzero");
        for r in row + 1..a.rows() {
            let t = a.get(r, c);
            if !t.is_zero() {
                a.row_axpy(r, row, f.neg(f.mul(t, inv)), c);
            }
        }
        row += 1;
    }
    row
}

/// Nonzero rows of the reduced echelon form of the stacked row vectors.
fn echelon_rows(
    field: &crate::gf::Field,
    width: usize,
    rows: Vec<Vec<crate::gf::Elem>>,
) -> Vec<Vec<crate::gf::Elem>> {
    let n = rows.len();
    let flat: Vec<_> = rows.into_iter().flatten().collect();
    let stacked = Mat::from_vec(field, n, width, flat).expect("consistent shape");
    let (r, pivots) = rref(&stacked);
    (0..pivots.len())
        .map(|i| (0..width).map(|j| r.get(i, j)).collect())
        .collect()
}

/// Basis of `{v : M v = 0}` as column vectors, in reduced echelon form.
pub fn right_nullspace(m: &Mat) -> Vec<Mat> {
    let f = m.field().clone();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let raw: Vec<Vec<_>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols()];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            v
        })
        .collect();
    if raw.is_empty() {
        return Vec::new();
    }
    echelon_rows(&f, m.cols(), raw)
        .into_iter()
        .map(|v| Mat::from_vec(&f, v.len(), 1, v).expect("column vector"))
        .collect()
}

/// Basis of `{u : u M = 0}` as row vectors, in reduced echelon form.
pub fn left_nullspace(m: &Mat) -> Vec<Mat> {
    right_nullspace(&m.transpose())
        .into_iter()
        .map(|v| v.transpose())
        .collect()
}

impl Mat {
    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        rref(self)
    }

    pub fn right_nullspace(&self) -> Vec<Mat> {
        right_nullspace(self)
    }

    pub fn left_nullspace(&self) -> Vec<Mat> {
        left_nullspace(self)
    }
}
