use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A coordinate vector over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<K: Field> {
    field: K,
    entries: Vec<K::Elem>,
}

impl<K: Field> Vector<K> {
    pub fn zeros(field: &K, len: usize) -> Self {
        Vector { field: field.clone(), entries: vec![field.zero(); len] }
    }

    /// The standard basis vector `e_i` of length `len`.
    pub fn unit(field: &K, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn from_entries(field: &K, entries: Vec<K::Elem>) -> Self {
        Vector { field: field.clone(), entries }
    }

    pub fn from_i64s(field: &K, values: &[i64]) -> Self {
        Vector { field: field.clone(), entries: values.iter().map(|&v| field.from_i64(v)).collect() }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[K::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<K::Elem> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &K::Elem {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: K::Elem) {
        self.entries[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Indices and values of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &K::Elem)> {
        self.entries.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|c| !c.is_zero())
    }

    pub fn scaled(&self, c: &K::Elem) -> Self {
        Vector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e.clone() * c.clone()).collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &K::Elem, other: &Self) {
        debug_assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                a.add_product(c, b);
            }
        }
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: self.len() });
        }
        Ok(())
    }
}

impl<K: Field> Add for &Vector<K> {
    type Output = Vector<K>;
    fn add(self, rhs: &Vector<K>) -> Vector<K> {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        Vector {
            field: self.field.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<K: Field> Sub for &Vector<K> {
    type Output = Vector<K>;
    fn sub(self, rhs: &Vector<K>) -> Vector<K> {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        Vector {
            field: self.field.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<K: Field> Neg for &Vector<K> {
    type Output = Vector<K>;
    fn neg(self) -> Vector<K> {
        Vector { field: self.field.clone(), entries: self.entries.iter().map(|a| -a.clone()).collect() }
    }
}

impl<K: Field> fmt::Display for Vector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
