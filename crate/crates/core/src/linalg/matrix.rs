//! Dense row-major matrices.
//!
//! Linear maps act on column vectors: a matrix of shape `(m, n)` sends
//! `K^n → K^m`.

use std::ops::{Add, Mul};

use num_traits::Zero;

use super::scalar::{GaussRat, Rat, Scalar};
use super::subspace::rref_rows;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dim(format!("matrix row {i}"), cols, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::dim(format!("matrix column {j}"), rows, c.len()));
            }
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Columns `range` as a new matrix.
    pub fn column_block(&self, start: usize, len: usize) -> Self {
        Matrix::from_fn(self.rows, len, |i, j| self.get(i, start + j).clone())
    }

    pub fn hstack(blocks: &[Matrix<T>], rows: usize) -> Result<Self> {
        let mut columns = Vec::new();
        for b in blocks {
            if b.rows != rows {
                return Err(Error::dim("hstack", rows, b.rows));
            }
            columns.extend(b.columns());
        }
        Matrix::from_columns(&columns, rows)
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> Matrix<T> {
    pub fn mul(&self, other: &Matrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim("matrix product", self.cols, other.rows));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::dim("matrix-vector product", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Kronecker product; index `(i1*r2 + i2, j1*c2 + j2)`.
    pub fn kron(&self, other: &Matrix<T>) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols).clone()
                * other.get(i % other.rows, j % other.cols).clone()
        })
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim("matrix sum", self.rows * self.cols, other.rows * other.cols));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<K: Scalar> Matrix<K> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { K::one() } else { K::zero() })
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn sub(&self, other: &Matrix<K>) -> Result<Self> {
        self.add(&other.scale(&-K::one()))
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn to_gauss(&self) -> Matrix<GaussRat> {
        self.map(Scalar::to_gauss)
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.to_rows(), self.cols).0.len()
    }

    /// Gauss–Jordan inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug: Vec<Vec<K>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
                r
            })
            .collect();
        let (reduced, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| reduced[i][n + j].clone()))
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        null_space(self.to_rows(), self.cols)
    }
}

impl Matrix<GaussRat> {
    /// Entrywise real and imaginary parts.
    pub fn split_parts(&self) -> (Matrix<Rat>, Matrix<Rat>) {
        (self.map(|z| z.re.clone()), self.map(|z| z.im.clone()))
    }

    /// `Some` iff every entry is rational.
    pub fn to_rational(&self) -> Option<Matrix<Rat>> {
        self.data
            .iter()
            .all(|z| z.im.is_zero())
            .then(|| self.map(|z| z.re.clone()))
    }
}

/// Null space of the row system `rows · v = 0` with `cols` unknowns.
pub fn null_space<K: Scalar>(rows: Vec<Vec<K>>, cols: usize) -> Vec<Vec<K>> {
    let (reduced, pivots) = rref_rows(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); cols];
            v[f] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn dot<K: Scalar>(a: &[K], b: &[K]) -> K {
    a.iter()
        .zip(b)
        .fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn lift_vec(v: &[Rat]) -> Vec<GaussRat> {
    v.iter().map(Scalar::to_gauss).collect()
}
