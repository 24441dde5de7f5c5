use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// A linear subspace of `K^n`, stored as an RREF basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<K: Field> {
    field: K,
    ambient_dim: usize,
    basis: Vec<Vector<K>>,
    pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: &K, ambient_dim: usize) -> Self {
        Subspace { field: field.clone(), ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &K, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| Vector::unit(field, ambient_dim, i)).collect();
        Subspace { field: field.clone(), ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    pub fn span<'a, I>(field: &K, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Vector<K>>,
    {
        let rows: Vec<Vector<K>> = vectors.into_iter().cloned().collect();
        let m = Matrix::from_row_vectors(field, ambient_dim, &rows)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// Row space of a matrix.
    pub fn from_matrix_rows(m: &Matrix<K>) -> Self {
        let rref = m.rref();
        let basis = (0..rref.rank).map(|i| rref.matrix.row_vector(i)).collect();
        Subspace { field: m.field().clone(), ambient_dim: m.cols(), basis, pivots: rref.pivots }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector<K>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the subspace: the remainder has zero
    /// entries in every pivot column.
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.get(p).clone();
            if !c.is_zero() {
                r.axpy(&-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector<K>) -> Result<bool> {
        v.check_len(self.ambient_dim)?;
        Ok(self.reduce(v).is_zero())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &Vector<K>) -> Result<Option<Vec<K::Elem>>> {
        v.check_len(self.ambient_dim)?;
        if !self.reduce(v).is_zero() {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v.get(p).clone()).collect()))
    }

    /// Adds `v` to the subspace, keeping the basis in RREF. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, v: &Vector<K>) -> Result<bool> {
        v.check_len(self.ambient_dim)?;
        let mut r = self.reduce(v);
        let Some(p) = r.first_nonzero() else {
            return Ok(false);
        };
        let inv = self.field.inv(r.get(p))?;
        r = r.scaled(&inv);
        for b in &mut self.basis {
            let c = b.get(p).clone();
            if !c.is_zero() {
                b.axpy(&-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        Ok(true)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b)?;
        }
        Ok(s)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let n = self.ambient_dim;
        let r = self.dim();
        let mut cols: Vec<Vector<K>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| -b));
        let m = Matrix::from_columns(&self.field, n, &cols)?;
        let mut gens = Vec::new();
        for k in m.kernel() {
            let mut v = Vector::zeros(&self.field, n);
            for (i, b) in self.basis.iter().enumerate().take(r) {
                v.axpy(k.get(i), b);
            }
            gens.push(v);
        }
        Subspace::span(&self.field, n, &gens)
    }

    /// `self <= other`
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_same_space(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self == other)
    }

    /// Non-pivot coordinates; their standard vectors project to a basis of
    /// the quotient space.
    pub fn complement_representatives(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }
}

impl<K: Field> fmt::Display for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// `particular + directions`, a nonempty affine subspace.
#[derive(Clone, Debug)]
pub struct AffineSet<K: Field> {
    pub particular: Vector<K>,
    pub directions: Subspace<K>,
}

impl<K: Field> AffineSet<K> {
    pub fn contains(&self, v: &Vector<K>) -> Result<bool> {
        v.check_len(self.particular.len())?;
        self.directions.contains(&(v - &self.particular))
    }

    /// The same set with its particular point reduced modulo the directions.
    pub fn canonical(&self) -> Self {
        AffineSet { particular: self.directions.reduce(&self.particular), directions: self.directions.clone() }
    }
}

impl<K: Field> PartialEq for AffineSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.directions == other.directions
            && self.particular.len() == other.particular.len()
            && self.directions.reduce(&(&self.particular - &other.particular)).is_zero()
    }
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent,
/// otherwise a particular solution (free variables set to zero) and the
/// kernel of `A`.
pub fn solve_affine<K: Field>(a: &Matrix<K>, b: &Vector<K>) -> Result<Option<AffineSet<K>>> {
    b.check_len(a.rows())?;
    let field = a.field();
    let n = a.cols();
    let mut aug = Matrix::zeros(field, a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b.get(i).clone());
    }
    let rref = aug.rref();
    if rref.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = Vector::zeros(field, n);
    for (row, &p) in rref.pivots.iter().enumerate() {
        particular.set(p, rref.matrix.get(row, n).clone());
    }
    let kernel = a.kernel();
    let directions = Subspace::span(field, n, &kernel)?;
    Ok(Some(AffineSet { particular, directions }))
}
