//! Dense square and rectangular matrices over any [`Ring`].

use serde::{Deserialize, Serialize};

use crate::coeffring::Ring;
use crate::error::{AlgError, Result};

/// Row-major dense matrix. Arithmetic takes the ring context explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgError::SizeMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgError::SizeMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }
    pub fn entries(&self) -> &[E] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn diag<R: Ring<Elem = E>>(ring: &R, d: &[E]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { ring.zero() })
    }

    /// Integer matrix embedded through `from_int`.
    pub fn from_ints<R: Ring<Elem = E>>(ring: &R, m: &Matrix<i64>) -> Self {
        m.map(|&x| ring.from_int(x))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if ring.is_exact_zero(a) {
                        continue;
                    }
                    let b = other.get(k, j);
                    if ring.is_exact_zero(b) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, b));
                }
                out.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: other.cols, data: out }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(c, a))
    }

    pub fn is_zero_matrix<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        ring.is_zero(&ring.sub(a, &ring.one()))
                    } else {
                        ring.is_zero(a)
                    }
                })
            })
    }

    /// Entrywise equality through the ring (`a - b` is zero).
    pub fn ring_eq<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.data.iter().zip(&other.data).all(|(a, b)| ring.is_zero(&ring.sub(a, b)))
    }

    /// Division-free determinant by Laplace expansion over column subsets.
    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n <= 16, "determinant limited to n <= 16");
        if n == 0 {
            return ring.one();
        }
        // memo[mask] = det of rows (n - |mask| ..) restricted to columns in mask.
        let full = (1usize << n) - 1;
        let mut memo: Vec<Option<E>> = vec![None; 1 << n];
        memo[0] = Some(ring.one());
        for mask in 1..=full {
            let k = mask.count_ones() as usize;
            let row = n - k;
            let mut acc = ring.zero();
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = self.get(row, j);
                if !ring.is_exact_zero(a) {
                    let minor = memo[mask & !(1 << j)].as_ref().expect("subset computed");
                    let term = ring.mul(a, minor);
                    acc = if pos % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
                }
                pos += 1;
            }
            memo[mask] = Some(acc);
        }
        memo[full].take().unwrap()
    }

    /// Adjugate: `adj(M)·M = det(M)·I`.
    pub fn adjugate<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(ring, 1);
        }
        Matrix::from_fn(n, n, |i, j| {
            // cofactor C_{ji}
            let minor = Matrix::from_fn(n - 1, n - 1, |a, b| {
                let r = if a < j { a } else { a + 1 };
                let c = if b < i { b } else { b + 1 };
                self.get(r, c).clone()
            });
            let d = minor.det(ring);
            if (i + j) % 2 == 0 {
                d
            } else {
                ring.neg(&d)
            }
        })
    }

    /// Inverse by Gauss-Jordan elimination choosing the best-ranked pivot.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        if !self.is_square() {
            return Err(AlgError::SizeMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(ring, n);
        for col in 0..n {
            let pivot = (col..n)
                .filter_map(|r| ring.pivot_rank(a.get(r, col)).map(|w| (w, r)))
                .min()
                .map(|(_, r)| r)
                .ok_or(AlgError::NonUnit)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let pinv = ring.inv(a.get(col, col))?;
            for j in 0..n {
                let v = ring.mul(&pinv, a.get(col, j));
                a.set(col, j, v);
                let w = ring.mul(&pinv, inv.get(col, j));
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if ring.is_exact_zero(&f) {
                    continue;
                }
                for j in 0..n {
                    let v = ring.sub(a.get(r, j), &ring.mul(&f, a.get(col, j)));
                    a.set(r, j, v);
                    let w = ring.sub(inv.get(r, j), &ring.mul(&f, inv.get(col, j)));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }
}
