//! Dense rational matrices stored as row vectors.

use num::{One, Zero};

use super::{dot, zeros, Rational, Vector};

/// Row-major rational matrix. `cols` is kept explicitly so that matrices
/// with zero rows still know their width.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: Vec<Vector>,
    pub cols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { rows, cols }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(vec![zeros(cols); rows], cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| super::unit(n, i)).collect();
        Matrix::new(rows, n)
    }

    /// Builds a matrix whose columns are the given vectors (all of length `nrows`).
    pub fn from_columns(columns: &[Vector], nrows: usize) -> Self {
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::new(rows, columns.len())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, j: usize) -> Vector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_columns(&self.rows, self.cols)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.cols, "matrix/vector width mismatch");
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// Row vector times matrix: `y^T M`.
    pub fn vec_mul(&self, y: &[Rational]) -> Vector {
        assert_eq!(y.len(), self.nrows(), "vector/matrix height mismatch");
        let mut out = zeros(self.cols);
        for (yi, row) in y.iter().zip(&self.rows) {
            if yi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(row) {
                *o += yi * m;
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "matrix product shape mismatch");
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        Matrix::new(rows, other.cols)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows());
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Matrix::new(rows, self.cols + other.cols)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Rational::one() / &m[r][c];
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::new(m, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in RREF-canonical form.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zeros(self.cols);
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.rows[i][f].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `M x = b` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.nrows());
        let aug = Matrix::new(
            self.rows
                .iter()
                .zip(b)
                .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
                .collect(),
            self.cols + 1,
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.rows[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let (r, pivots) = self.hcat(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::new(
            r.rows.into_iter().map(|row| row[n..].to_vec()).collect(),
            n,
        ))
    }
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    Matrix::new(vectors.to_vec(), dim).rank()
}

/// Canonical basis (RREF rows) of the span of `vectors`.
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let (r, pivots) = Matrix::new(vectors.to_vec(), dim).rref();
    r.rows.into_iter().take(pivots.len()).collect()
}

/// Basis of the intersection of two subspaces given by bases (as vectors).
///
/// Returned as coefficient pairs `(a, b)` with `A a = B b` spanning the
/// intersection, where `A`, `B` have the bases as columns.
pub fn intersection_coords(a: &[Vector], b: &[Vector], dim: usize) -> Vec<(Vector, Vector)> {
    let ka = a.len();
    let cols: Vec<Vector> = a
        .iter()
        .cloned()
        .chain(b.iter().map(|v| super::neg(v)))
        .collect();
    let m = Matrix::from_columns(&cols, dim);
    m.nullspace()
        .into_iter()
        .map(|n| (n[..ka].to_vec(), n[ka..].to_vec()))
        .collect()
}
