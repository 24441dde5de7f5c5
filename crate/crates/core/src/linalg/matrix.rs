use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<K: Field> {
    pub matrix: Matrix<K>,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data })
    }

    pub fn from_i64_rows(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &K, len: usize, columns: &[Vector<K>]) -> Result<Self> {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            c.check_len(len)?;
            for i in 0..len {
                m.set(i, j, c.get(i).clone());
            }
        }
        Ok(m)
    }

    pub fn from_row_vectors(field: &K, cols: usize, rows: &[Vector<K>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            r.check_len(cols)?;
            data.extend(r.entries().iter().cloned());
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector<K> {
        Vector::from_entries(&self.field, self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector<K> {
        Vector::from_entries(&self.field, (0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector<K>) -> Result<Vector<K>> {
        v.check_len(self.cols)?;
        let mut out = Vector::zeros(&self.field, self.rows);
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for (a, b) in self.row(i).iter().zip(v.entries()) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_product(a, b);
                }
            }
            out.set(i, acc);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
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
                        out.data[idx].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry found
    /// scanning down each column; exact arithmetic needs no magnitude pivoting.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -f;
                for j in c..m.cols {
                    let pivot_row = m.get(r, j).clone();
                    if !pivot_row.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx].add_product(&neg, &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the null space `{x : Mx = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector<K>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Vector::zeros(&self.field, self.cols);
            v.set(f, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                v.set(p, -matrix.get(row, f).clone());
            }
            basis.push(v);
        }
        basis
    }
}

impl<K: Field> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
