use super::field::{Field, Rational};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Matrix over the rationals.
pub type QMatrix = Matrix<Rational>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics unless `entries.len() == rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        Matrix { rows, cols, entries }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc.add(&a.mul(b))
                        }
                    })
            })
            .collect()
    }

    /// Reduced row echelon form and the ascending list of pivot columns.
    ///
    /// Pivot entries are 1 and every other entry of a pivot column is 0.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (first, second) = self.entries.split_at_mut(hi * c);
        first[lo * c..lo * c + c].swap_with_slice(&mut second[..c]);
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv();
            for j in c..cols {
                let v = self.get(r, j);
                if !v.is_zero() {
                    let nv = v.mul(&inv);
                    self.set(r, j, nv);
                }
            }
            let pivot_row: Vec<F> = self.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let base = i * cols;
                for (k, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let e = &mut self.entries[base + c + k];
                    *e = e.sub(&factor.mul(pv));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank, via forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            let pivot_row: Vec<F> = m.row(r)[c..].to_vec();
            for i in r + 1..rows {
                let factor = m.get(i, c).mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                let base = i * cols;
                for (k, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let e = &mut m.entries[base + c + k];
                    *e = e.sub(&factor.mul(pv));
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel in canonical form: vector `k` has a 1 in the
    /// `k`-th free column, 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                let e = m.get(r, free);
                if !e.is_zero() {
                    v[p] = e.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Nonzero rows of the reduced row echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), len).rank()
}

/// Reduced row echelon form of a rational matrix.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    m.rref()
}

/// Canonical kernel basis of a rational matrix, as column vectors.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    m.nullspace()
}
