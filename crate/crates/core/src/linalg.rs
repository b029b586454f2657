//! Dense exact linear algebra over the rationals.

use std::fmt;

use num::{One, Zero};

use crate::scalar::{one, zero, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / self.cols, idx % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzero_entries() {
            t[(c, r)] = v.clone();
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for (i, k, a) in self.nonzero_entries() {
            for j in 0..rhs.cols {
                let b = &rhs[(k, j)];
                if !b.is_zero() {
                    out[(i, j)] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![zero(); self.rows];
        for (i, k, a) in self.nonzero_entries() {
            if !v[k].is_zero() {
                out[i] += a * &v[k];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols);
        for r in 0..self.rows {
            red.insert(self.row(r).to_vec());
        }
        red.rank()
    }

    /// Basis of `{x : self * x = 0}` in reduced form (one free variable set to 1 per vector).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut red = RowReducer::new(self.cols);
        for r in 0..self.rows {
            red.insert(self.row(r).to_vec());
        }
        red.nullspace()
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in (c + 1)..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..n {
                    let t = &f * &a[(c, k)];
                    a[(r, k)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)].clone();
            if !pivot.is_one() {
                for k in 0..n {
                    a[(c, k)] /= &pivot;
                    inv[(c, k)] /= &pivot;
                }
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for k in 0..n {
                    let t = &f * &a[(c, k)];
                    a[(r, k)] -= t;
                    let t = &f * &inv[(c, k)];
                    inv[(r, k)] -= t;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

/// Incremental reduced row echelon form.
///
/// Rows are inserted one at a time and kept fully reduced, so the cost of a
/// large tall system is driven by the rank rather than the row count.
#[derive(Debug, Clone)]
pub struct RowReducer {
    width: usize,
    // (pivot column, row with a 1 at the pivot and 0 at every other pivot)
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowReducer {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the current rows (in place); returns true if the result is zero.
    pub fn reduce(&self, v: &mut [Scalar]) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[k] -= &f * r;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w)
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        if self.is_full() || self.reduce(&mut v) {
            return false;
        }
        let p = v.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let lead = v[p].clone();
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[k] -= &f * x;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// Rows sorted by pivot column; this is the reduced echelon basis of the row space.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in 0..self.width {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![zero(); self.width];
            v[free] = one();
            for (p, row) in &self.rows {
                v[*p] = -row[free].clone();
            }
            out.push(v);
        }
        out
    }
}

/// Reduced echelon basis of the span of `vectors` (pivot columns ascending).
pub fn echelon_basis(width: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut red = RowReducer::new(width);
    for v in vectors {
        red.insert(v);
    }
    red.basis()
}

/// Solves `a x = b` for one particular solution, if the system is consistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut red = RowReducer::new(n + 1);
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        red.insert(row);
    }
    if red.pivots().contains(&n) {
        return None;
    }
    let mut x = vec![zero(); n];
    for (p, row) in &red.rows {
        x[*p] = row[n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse_agree() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.determinant(), int(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv[(0, 0)], ratio(11, 18));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.inverse().is_none());
        assert_eq!(a.determinant(), int(0));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn reducer_membership() {
        let mut red = RowReducer::new(3);
        assert!(red.insert(vec![int(1), int(1), int(0)]));
        assert!(red.insert(vec![int(0), int(1), int(1)]));
        assert!(!red.insert(vec![int(1), int(2), int(1)]));
        assert!(red.contains(&[int(1), int(0), int(-1)]));
        assert!(!red.contains(&[int(0), int(0), int(1)]));
        assert_eq!(red.pivots(), vec![0, 1]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        let s = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[int(1), int(3)]).is_none());
    }
}
