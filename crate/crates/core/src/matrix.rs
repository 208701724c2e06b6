//! Dense matrices over an exact field, with deterministic elimination.
//!
//! The pivot rule everywhere is "first nonzero entry in column order",
//! so every basis this module produces (kernels, solution spaces, spans)
//! is reproducible bit-for-bit.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Test/fixture convenience: build from integer literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| F::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Single column from a coordinate vector.
    pub fn column_vector(v: &[F]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![F::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].clone() + a.clone() * v[j].clone();
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; `(A ⊗ B)[(i·p + k), (j·q + l)] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a.clone() * b.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    /// Writes `other` into `self` starting at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, other: &Self) {
        for i in 0..other.rows {
            for j in 0..other.cols {
                self.set(r0 + i, c0 + j, other.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduced row-echelon form with the pivot columns, first-nonzero rule.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, returned as the columns of a matrix.
    pub fn kernel(&self) -> Matrix<F> {
        let rref = self.rref();
        let pivots = &rref.pivots;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, F::one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -rref.matrix.get(r, fc).clone());
            }
        }
        out
    }

    /// Solves `self · X = b` for all columns of `b` at once.
    pub fn solve(&self, b: &Matrix<F>) -> Result<LinearSolution<F>, MatrixError> {
        if self.rows != b.rows {
            return Err(MatrixError::Dimension(format!(
                "A has {} rows but B has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let rref = aug.rref();
        // any pivot inside the b-block witnesses an inconsistent column
        let consistent = rref.pivots.iter().all(|&c| c < self.cols);
        let particular = if consistent {
            let mut x = Matrix::zeros(self.cols, b.cols);
            for (r, &pc) in rref.pivots.iter().enumerate() {
                for j in 0..b.cols {
                    x.set(pc, j, rref.matrix.get(r, self.cols + j).clone());
                }
            }
            Some(x)
        } else {
            None
        };
        Ok(LinearSolution {
            particular,
            kernel: self.kernel(),
        })
    }

    /// Determinant by Gaussian elimination with exact division.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone() * inv.clone();
                for j in col..n {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse of a square invertible matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let sol = self.solve(&Matrix::identity(self.rows)).ok()?;
        let inv = sol.particular?;
        if sol.kernel.cols() == 0 {
            Some(inv)
        } else {
            None
        }
    }

    /// Flattens row-major into one long coordinate vector.
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn unflatten(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }
}

impl<F: Scalar> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub struct LinearSolution<F> {
    /// One exact solution (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub particular: Option<Matrix<F>>,
    /// Columns form a basis of the homogeneous solution space.
    pub kernel: Matrix<F>,
}

/// A subspace of `k^n` kept in reduced row-echelon form; rows are a
/// canonical basis. Supports incremental closure computations.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>, // pivots[r] = pivot column of rows[r], strictly increasing
}

impl<F: Scalar> Subspace<F> {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a [F]>) -> Self
    where
        F: 'a,
    {
        let mut s = Self::new(ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Normal form of `v` modulo the subspace (pivot coordinates eliminated).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for j in p..self.ambient {
                if self.rows[r][j].is_zero() {
                    continue;
                }
                w[j] = w[j].clone() - c.clone() * self.rows[r][j].clone();
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts a vector; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse().expect("nonzero");
        for x in w.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // eliminate the new pivot from existing rows
        for r in 0..self.rows.len() {
            if self.rows[r][p].is_zero() {
                continue;
            }
            let c = self.rows[r][p].clone();
            for j in 0..self.ambient {
                if w[j].is_zero() {
                    continue;
                }
                self.rows[r][j] = self.rows[r][j].clone() - c.clone() * w[j].clone();
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient coordinates that are *not* pivots: unit vectors on these
    /// indices represent a canonical basis of the quotient `k^n / self`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Coordinates of `v + self` in the canonical quotient basis.
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let w = self.reduce(v);
        self.complement_indices()
            .iter()
            .map(|&c| w[c].clone())
            .collect()
    }
}

/// Precomputed solver for repeated `B·c = v` queries against a fixed
/// matrix `B` (columns usually a basis, but consistency is checked).
pub struct ColumnSolver<F> {
    cols: usize,
    rank: usize,
    pivots: Vec<usize>,
    /// row transform with `E·B` in RREF
    e: Matrix<F>,
    rref_b: Matrix<F>,
}

impl<F: Scalar> ColumnSolver<F> {
    pub fn new(b: &Matrix<F>) -> Self {
        let aug = b.hstack(&Matrix::identity(b.rows()));
        let r = aug.rref();
        let pivots: Vec<usize> = r.pivots.iter().cloned().filter(|&c| c < b.cols()).collect();
        let rank = pivots.len();
        let e = r.matrix.submatrix(0, b.cols(), b.rows(), b.rows());
        let rref_b = r.matrix.submatrix(0, 0, b.rows(), b.cols());
        ColumnSolver {
            cols: b.cols(),
            rank,
            pivots,
            e,
            rref_b,
        }
    }

    /// Solves `B·c = v`; `None` when `v` is outside the column span.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        let w = self.e.mul_vec(v);
        // consistency: rows past the rank must vanish
        if w[self.rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut c = vec![F::zero(); self.cols];
        // back-substitute through the RREF (unit pivots, free vars zero)
        for (r, &p) in self.pivots.iter().enumerate().rev() {
            let mut val = w[r].clone();
            for j in p + 1..self.cols {
                if self.rref_b.get(r, j).is_zero() || c[j].is_zero() {
                    continue;
                }
                val = val - self.rref_b.get(r, j).clone() * c[j].clone();
            }
            c[p] = val;
        }
        Some(c)
    }
}
