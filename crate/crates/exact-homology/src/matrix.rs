//! Sparse integer matrices in triplet form.
//!
//! Entries are arbitrary-precision integers. The triplet list is kept sorted
//! by `(row, col)` with no stored zeros and no duplicates, so equality of
//! matrices is equality of the triplet lists.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A sparse matrix over `Z` with `rows x cols` shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Int::one())).collect(),
        }
    }

    /// Builds a matrix from triplets. Duplicate positions are accumulated and
    /// zero results dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(MatrixError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            let slot = acc.entry((r, c)).or_insert_with(Int::zero);
            *slot += v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sorted triplet view `(row, col, value)`.
    pub fn entries(&self) -> &[(usize, usize, Int)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry accessor; zero for absent positions.
    pub fn get(&self, row: usize, col: usize) -> Int {
        match self
            .entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
        {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries: Vec<(usize, usize, Int)> = self
            .entries
            .iter()
            .map(|(r, c, v)| (*c, *r, v.clone()))
            .collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Row-indexed view of `other` for the accumulation.
        let mut other_rows: BTreeMap<usize, Vec<(usize, &Int)>> = BTreeMap::new();
        for (r, c, v) in &other.entries {
            other_rows.entry(*r).or_default().push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (r, k, v) in &self.entries {
            if let Some(row) = other_rows.get(k) {
                for (c, w) in row {
                    let slot = acc.entry((*r, *c)).or_insert_with(Int::zero);
                    *slot += v * *w;
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix-vector product with a dense vector of length `cols`.
    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * vec[{}]",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Int::zero(); self.rows];
        for (r, c, w) in &self.entries {
            out[*r] += w * &v[*c];
        }
        Ok(out)
    }

    /// Rank of the matrix reduced mod 2, by Gaussian elimination over `F_2`
    /// with bit-packed rows. Independent of the Smith normal form path.
    pub fn rank_f2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; self.rows];
        for (r, c, v) in &self.entries {
            if v.bit(0) {
                rows[*r][c / 64] ^= 1u64 << (c % 64);
            }
        }
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..self.rows).find(|&r| rows[r][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] >> b & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Determinant by fraction-free (Bareiss) elimination on a dense copy.
    /// Intended for the small matrices that appear in unimodularity checks.
    pub fn det_dense(&self) -> Result<Int, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "det of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = vec![vec![Int::zero(); n]; n];
        for (r, c, v) in &self.entries {
            m[*r][*c] = v.clone();
        }
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(Int::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, t.iter().map(|(r, c, v)| (*r, *c, Int::from(*v))))
            .unwrap()
    }

    #[test]
    fn triplets_accumulate_and_drop_zeros() {
        let a = m(2, 2, &[(0, 0, 1), (0, 0, -1), (1, 1, 3)]);
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(1, 1), Int::from(3));
        assert_eq!(a.get(0, 0), Int::zero());
    }

    #[test]
    fn mul_identity() {
        let a = m(2, 3, &[(0, 0, 2), (1, 2, -5)]);
        let i2 = IntMatrix::identity(2);
        assert_eq!(i2.mul(&a).unwrap(), a);
    }

    #[test]
    fn mul_known_product() {
        let a = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        let b = m(2, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, m(2, 2, &[(0, 0, 2), (0, 1, 1), (1, 0, 4), (1, 1, 3)]));
    }

    #[test]
    fn rank_f2_examples() {
        // [[1,1],[1,1]] has F2-rank 1.
        assert_eq!(m(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]).rank_f2(), 1);
        // [[2]] is zero mod 2.
        assert_eq!(m(1, 1, &[(0, 0, 2)]).rank_f2(), 0);
        assert_eq!(IntMatrix::identity(5).rank_f2(), 5);
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(4).det_dense().unwrap(), Int::one());
        let a = m(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        assert_eq!(a.det_dense().unwrap(), Int::from(-8));
        let sing = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(sing.det_dense().unwrap(), Int::zero());
    }

    #[test]
    fn out_of_bounds_rejected() {
        let r = IntMatrix::from_triplets(1, 1, vec![(1, 0, Int::one())]);
        assert!(r.is_err());
    }
}
