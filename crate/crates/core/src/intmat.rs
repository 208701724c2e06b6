//! Arbitrary-precision integer matrices: Smith normal form, exact
//! determinants, unimodularity tests. Schoolbook algorithms only; the
//! Cartan matrices this crate meets are tiny.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| BigInt::from(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "integer matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
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
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    /// 2×2 block assembly `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (r0, c0, m) in [
            (0, 0, a),
            (0, a.cols, b),
            (a.rows, 0, c),
            (a.rows, a.cols, d),
        ] {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Exact determinant via Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.data.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix (integer entries).
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        // adjugate / det, computed by cofactors; sizes here are tiny
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut c = minor.det();
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                adj.set(j, i, c);
            }
        }
        if det < BigInt::zero() {
            adj = adj.neg();
        }
        Some(adj)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> IntMatrix {
        let n = self.rows;
        let mut out = Self::zeros(n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == drop_row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == drop_col {
                    continue;
                }
                out.set(r, c, self.get(i, j).clone());
                c += 1;
            }
            r += 1;
        }
        out
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
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

/// Smith normal form `U·C·V = D` with `U`, `V` unimodular and `D`
/// diagonal satisfying the divisibility chain `d_1 | d_2 | …`.
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(c: &IntMatrix) -> Smith {
    let rows = c.rows();
    let cols = c.cols();
    let mut d = c.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |m: &mut IntMatrix, a: usize, b: usize| {
        for j in 0..m.cols {
            let x = m.get(a, j).clone();
            let y = m.get(b, j).clone();
            m.set(a, j, y);
            m.set(b, j, x);
        }
    };
    let swap_cols = |m: &mut IntMatrix, a: usize, b: usize| {
        for i in 0..m.rows {
            let x = m.get(i, a).clone();
            let y = m.get(i, b).clone();
            m.set(i, a, y);
            m.set(i, b, x);
        }
    };
    // row_i -= q * row_k  (applied to d and u)
    let row_op = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt| {
        for j in 0..d.cols {
            let x = d.get(i, j) - q * d.get(k, j);
            d.set(i, j, x);
        }
        for j in 0..u.cols {
            let x = u.get(i, j) - q * u.get(k, j);
            u.set(i, j, x);
        }
    };
    let col_op = |d: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt| {
        for i in 0..d.rows {
            let x = d.get(i, j) - q * d.get(i, k);
            d.set(i, j, x);
        }
        for i in 0..v.rows {
            let x = v.get(i, j) - q * v.get(i, k);
            v.set(i, j, x);
        }
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero |entry| in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if d.get(i, j).abs() < d.get(*bi, *bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else {
            break; // remaining block is zero
        };
        if pi != t {
            swap_rows(&mut d, pi, t);
            swap_rows(&mut u, pi, t);
        }
        if pj != t {
            swap_cols(&mut d, pj, t);
            swap_cols(&mut v, pj, t);
        }

        // clear the pivot column and row by division with remainder
        let mut dirty = false;
        for i in t + 1..rows {
            if d.get(i, t).is_zero() {
                continue;
            }
            let q = d.get(i, t).div_floor(d.get(t, t));
            row_op(&mut d, &mut u, i, t, &q);
            if !d.get(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            if d.get(t, j).is_zero() {
                continue;
            }
            let q = d.get(t, j).div_floor(d.get(t, t));
            col_op(&mut d, &mut v, j, t, &q);
            if !d.get(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // remainders became new, smaller pivot candidates
        }

        // divisibility: if the pivot misses an entry below, mix its column in
        let mut fixed = true;
        'search: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d.get(i, j).mod_floor(d.get(t, t)).is_zero() {
                    // add column j to column t and restart this pivot
                    let minus_one = -BigInt::one();
                    col_op(&mut d, &mut v, t, j, &minus_one);
                    fixed = false;
                    break 'search;
                }
            }
        }
        if !fixed {
            continue;
        }

        if d.get(t, t).is_negative() {
            for j in 0..cols {
                let x = -d.get(t, j).clone();
                d.set(t, j, x);
            }
            for j in 0..rows {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
        }
        t += 1;
    }

    Smith { u, d, v }
}

impl Smith {
    /// Exact reconstruction check `U·C·V = D`.
    pub fn verify(&self, c: &IntMatrix) -> bool {
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        if self.u.mul(c).mul(&self.v) != self.d {
            return false;
        }
        // diagonal with divisibility chain
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.d.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() && !w[1].is_zero() {
                return false;
            }
            if !w[0].is_zero() && !w[1].mod_floor(&w[0]).is_zero() {
                return false;
            }
        }
        true
    }
}
