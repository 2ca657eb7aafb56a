//! Dense exact linear algebra over the rationals.
//!
//! Every subspace that the rest of the crate manipulates is stored as the
//! row space of a matrix in reduced row echelon form, so subspace equality
//! is plain representation equality.

use num::{BigRational, Zero};

/// Exact rational scalar. Always stored reduced with positive denominator.
pub type Scalar = BigRational;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    num::One::one()
}

pub fn from_i64(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(num.into(), den.into())
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r);
        }
        Matrix {
            rows: nrows,
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows spanning the right null space `{v : self * v = 0}`, in reduced
    /// echelon form.
    pub fn kernel_basis(&self) -> Matrix {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![zero(); self.cols];
            v[f] = one();
            for (r, &p) in pivots.iter().enumerate() {
                // pivot variable p = -sum of free contributions in row r
                v[p] = -red[(r, f)].clone();
            }
            rows.push(v);
        }
        let mut out = Matrix::from_rows(rows, self.cols);
        rref_in_place(&mut out);
        out
    }

    /// Canonical basis of the row space (zero rows dropped).
    pub fn row_space(&self) -> Matrix {
        let (red, pivots) = self.rref();
        let rows = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Matrix::from_rows(rows, self.cols)
    }

    /// Does `v` lie in the row space of `self`? Assumes `self` is in rref.
    pub fn contains_in_rowspace(&self, v: &[Scalar]) -> bool {
        self.reduce_mod_rowspace(v).iter().all(|e| e.is_zero())
    }

    /// Reduce `v` modulo the row space of `self` (assumed in rref).
    pub fn reduce_mod_rowspace(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for r in 0..self.rows {
            let pivot = match self.row(r).iter().position(|e| !e.is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if !v[pivot].is_zero() {
                let c = v[pivot].clone();
                for j in pivot..self.cols {
                    let s = &self[(r, j)] * &c;
                    v[j] -= s;
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the rows of `self` (assumed in rref), if it
    /// lies in the row space.
    pub fn coordinates_in_rowspace(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut v = v.to_vec();
        let mut coords = vec![zero(); self.rows];
        for r in 0..self.rows {
            let pivot = match self.row(r).iter().position(|e| !e.is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if !v[pivot].is_zero() {
                let c = v[pivot].clone();
                for j in pivot..self.cols {
                    let s = &self[(r, j)] * &c;
                    v[j] -= s;
                }
                coords[r] = c;
            }
        }
        if v.iter().all(|e| e.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = one();
        }
        let pivots = rref_in_place(&mut aug);
        // invertible iff the pivots of the augmented system sit in the left half
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// One solution `x` of `self * x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        // Augment, reduce, read off a particular solution.
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let pivot_row = match (row..m.rows).find(|&r| !m[(r, col)].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        if pivot_row != row {
            for j in 0..m.cols {
                let a = m[(pivot_row, j)].clone();
                let b = m[(row, j)].clone();
                m[(pivot_row, j)] = b;
                m[(row, j)] = a;
            }
        }
        let inv = {
            let p = m[(row, col)].clone();
            one() / p
        };
        for j in col..m.cols {
            let v = &m[(row, j)] * &inv;
            m[(row, j)] = v;
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for j in col..m.cols {
                let s = &m[(row, j)] * &factor;
                m[(r, j)] -= s;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the intersection of the given row spaces, in canonical echelon
/// form. All inputs must have the same column count.
pub fn intersect_rowspaces(spaces: &[Matrix]) -> Matrix {
    assert!(!spaces.is_empty(), "need at least one space");
    let cols = spaces[0].cols;
    let mut acc = spaces[0].row_space();
    for s in &spaces[1..] {
        assert_eq!(s.cols, cols, "ambient dimension mismatch");
        acc = intersect_two(&acc, &s.row_space());
    }
    acc
}

fn intersect_two(u: &Matrix, w: &Matrix) -> Matrix {
    let cols = u.cols;
    if u.rows == 0 || w.rows == 0 {
        return Matrix::zeros(0, cols);
    }
    // Solve a*U = b*W: right kernel of the (cols x (p+q)) matrix [U^T | -W^T].
    let p = u.rows;
    let q = w.rows;
    let mut m = Matrix::zeros(cols, p + q);
    for i in 0..cols {
        for j in 0..p {
            m[(i, j)] = u[(j, i)].clone();
        }
        for j in 0..q {
            m[(i, p + j)] = -w[(j, i)].clone();
        }
    }
    let ker = m.kernel_basis();
    let mut rows = Vec::new();
    for r in 0..ker.rows {
        let a = &ker.row(r)[..p];
        let mut v = vec![zero(); cols];
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                for k in 0..cols {
                    let s = c * &u[(j, k)];
                    v[k] += s;
                }
            }
        }
        rows.push(v);
    }
    Matrix::from_rows(rows, cols).row_space()
}
