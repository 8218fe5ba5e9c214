use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

/// Dense matrix over exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds an `rows x cols` matrix; `rows` is needed because a matrix with
    /// zero rows carries no column count otherwise.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// The 0/1 matrix sending basis vector `j` to basis vector `target[j]`.
    pub fn from_assignment(rows: usize, cols: usize, target: &[usize]) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for (j, &i) in target.iter().enumerate() {
            m.set(i, j, Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; the row index of `a ⊗ b` is `i_a * rows(b) + i_b`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stacks blocks vertically; all blocks need `cols` columns.
    pub fn vstack(cols: usize, blocks: &[Matrix]) -> Result<Matrix> {
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Ok(Matrix { rows, cols, data })
    }

    /// Rows `start..start+len`.
    pub fn row_block(&self, start: usize, len: usize) -> Matrix {
        Matrix::from_fn(len, self.cols, |i, j| self.get(start + i, j).clone())
    }

    fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &factor * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (e, pivots) = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| e.get(i, n + j).clone()))
    }

    /// Basis of the right null space, one column vector per entry.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -e.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`; returns a particular solution and the null space
    /// basis, or `None` when inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (e, pivots) = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = e.get(r, self.cols).clone();
        }
        Some((x, self.nullspace()))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| format_q(self.get(i, j))).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.rows, self.cols, self.to_strings()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (rows, cols, entries): (usize, usize, Vec<Vec<String>>) = Deserialize::deserialize(d)?;
        if rows == 0 || cols == 0 {
            return Ok(Matrix::zeros(rows, cols));
        }
        let m = Matrix::from_strings(&entries).map_err(serde::de::Error::custom)?;
        if m.rows != rows || m.cols != cols {
            return Err(serde::de::Error::custom("matrix shape mismatch"));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_inverse() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.rank(), 2);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert!(Matrix::identity(0).inverse().is_some());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(&[&[1, 2]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k, m(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(-1), q(1), q(0)]);
        let (x, _) = a.solve(&[q(2), q(3)]).unwrap();
        assert_eq!(x, vec![q(2), q(0), q(3)]);
        let inconsistent = m(&[&[1], &[1]]);
        assert!(inconsistent.solve(&[q(0), q(1)]).is_none());
    }
}
