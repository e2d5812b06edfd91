use alloc::vec;
use alloc::vec::Vec;

use super::HomologyError;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i128>) -> Result<Self, HomologyError> {
        if entries.len() != rows * cols {
            return Err(HomologyError::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self, HomologyError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(HomologyError::DimensionMismatch { expected: cols, got: r.len() });
            }
            entries.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i128] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(HomologyError::Overflow)?;
                    let cur = out.get(i, j).checked_add(prod).ok_or(HomologyError::Overflow)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>, HomologyError> {
        if v.len() != self.cols {
            return Err(HomologyError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i128, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or(HomologyError::Overflow)
                })
            })
            .collect()
    }

    pub fn mul_vec_f64(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a as f64 * b).sum()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128, HomologyError> {
        if self.rows != self.cols {
            return Err(HomologyError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a.get(k, k) == 0 {
                match (k + 1..n).find(|&i| a.get(i, k) != 0) {
                    Some(i) => {
                        for j in 0..n {
                            let t = a.get(k, j);
                            a.set(k, j, a.get(i, j));
                            a.set(i, j, t);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = a.get(i, j).checked_mul(a.get(k, k)).ok_or(HomologyError::Overflow)?;
                    let y = a.get(i, k).checked_mul(a.get(k, j)).ok_or(HomologyError::Overflow)?;
                    a.set(i, j, (x - y) / prev);
                }
            }
            prev = a.get(k, k);
        }
        Ok(if n == 0 { 1 } else { sign * a.get(n - 1, n - 1) })
    }
}

/// Sparse integer matrix stored by rows; entries sorted by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn set_row(&mut self, r: usize, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        entries.retain(|e| e.1 != 0);
        self.data[r] = entries;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.data[r]
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for i in 0..m.rows() {
            s.data[i] = m.row(i).iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &v)| (j, v as i64)).collect();
        }
        s
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                m.set(i, j, v as i128);
            }
        }
        m
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<i64> {
        self.data.iter().map(|row| row.iter().map(|&(j, a)| a * v[j]).sum()).collect()
    }

    pub fn mul_vec_f64(&self, v: &[f64]) -> Vec<f64> {
        self.data.iter().map(|row| row.iter().map(|&(j, a)| a as f64 * v[j]).sum()).collect()
    }
}
