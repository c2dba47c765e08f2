//! Row-sparse matrices over ℚ(ζ_m).

use std::fmt;

use super::sparse::{Accumulator, SparseVec};
use super::LinAlgError;
use crate::field::{Conductor, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| FieldElem::one()).collect())
    }

    pub fn diagonal(d: Vec<FieldElem>) -> Self {
        let n = d.len();
        let data = d.into_iter().enumerate().map(|(i, c)| SparseVec::single(i, c)).collect();
        Matrix { rows: n, cols: n, data }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Matrix { rows: data.len(), cols, data }
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        Matrix::from_rows(rows, columns.to_vec()).transpose_with_rows(rows)
    }

    fn transpose_with_rows(&self, out_cols: usize) -> Matrix {
        let mut buckets: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); out_cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, c) in row.iter() {
                buckets[j].push((i, c.clone()));
            }
        }
        let data = buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect();
        Matrix { rows: out_cols, cols: self.rows, data }
    }

    pub fn from_dense(rows: &[Vec<FieldElem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Matrix { rows: rows.len(), cols, data: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<FieldElem>> =
            rows.iter().map(|r| r.iter().map(|&x| FieldElem::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i].coeff(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        let mut e = std::mem::take(&mut self.data[i]).into_entries();
        e.retain(|(k, _)| *k != j);
        e.push((j, v));
        self.data[i] = SparseVec::from_entries(e);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn conductor(&self) -> Conductor {
        self.data.iter().map(SparseVec::conductor).max().unwrap_or(Conductor::One)
    }

    pub fn transpose(&self) -> Matrix {
        self.transpose_with_rows(self.cols)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let entries =
            self.data.iter().enumerate().filter_map(|(i, r)| r.get(j).map(|c| (i, c.clone()))).collect();
        SparseVec::from_sorted_unchecked(entries)
    }

    /// `M v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let entries =
            self.data.iter().enumerate().map(|(i, r)| (i, r.dot(v))).filter(|(_, c)| !c.is_zero()).collect();
        SparseVec::from_sorted_unchecked(entries)
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc = Accumulator::new(rhs.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, c) in row.iter() {
                    acc.add_scaled(c, &rhs.data[k]);
                }
                acc.take()
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }

    pub fn add_scaled(&self, s: &FieldElem, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_scaled(s, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&FieldElem::one(), rhs)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&FieldElem::from_int(-1), rhs)
    }

    pub fn scale(&self, s: &FieldElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(s)).collect() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.nnz() == 1 && r.leading().is_some_and(|(j, c)| j == i && c.is_one()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    /// Kronecker product; index (i, j) maps to i * rhs.dim + j.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * rhs.rows);
        for a in &self.data {
            for b in &rhs.data {
                let mut e = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        e.push((i * rhs.cols + j, x * y));
                    }
                }
                data.push(SparseVec::from_sorted_unchecked(e));
            }
        }
        Matrix { rows: self.rows * rhs.rows, cols: self.cols * rhs.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElem>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    /// Square submatrix on the given (sorted or not) index set.
    pub fn restrict(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let data = idx
            .iter()
            .map(|&i| {
                SparseVec::from_entries(
                    self.data[i]
                        .iter()
                        .filter(|(j, _)| pos[*j] != usize::MAX)
                        .map(|(j, c)| (pos[j], c.clone()))
                        .collect(),
                )
            })
            .collect();
        Matrix { rows: idx.len(), cols: idx.len(), data }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}
