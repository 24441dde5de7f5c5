//! Exact dense linear algebra: vectors, matrices, RREF and subspaces.

mod matrix;
mod subspace;
mod vector;

pub use matrix::{Matrix, Rref};
pub use subspace::{solve_affine, AffineSet, Subspace};
pub use vector::Vector;

use crate::error::Result;
use crate::scalar::Field;

/// A linear map given by its matrix: columns are images of the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<K: Field> {
    matrix: Matrix<K>,
}

impl<K: Field> LinearMap<K> {
    pub fn new(matrix: Matrix<K>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(field, n) }
    }

    pub fn zero(field: &K, domain: usize, codomain: usize) -> Self {
        LinearMap { matrix: Matrix::zeros(field, codomain, domain) }
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &Vector<K>) -> Result<Vector<K>> {
        self.matrix.mul_vec(v)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.domain_dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn rref_examples() {
        let k = q();
        let id = Matrix::identity(&k, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(&k, 2, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);

        // hand reduction: R2 <- R2 - 2 R1
        let m = Matrix::from_i64_rows(&k, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64_rows(&k, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn span_examples() {
        let k = q();
        let full = Subspace::span(&k, 3, &[Vector::unit(&k, 3, 0), Vector::unit(&k, 3, 1), Vector::unit(&k, 3, 2)]).unwrap();
        assert!(full.is_full());
        let empty: Vec<Vector<Rationals>> = vec![];
        assert!(Subspace::span(&k, 3, &empty).unwrap().is_zero());
        // (1,0,-1) = (1,1,0) - (0,1,1), so the rank is 2
        let s = Subspace::span(
            &k,
            3,
            &[Vector::from_i64s(&k, &[1, 1, 0]), Vector::from_i64s(&k, &[0, 1, 1]), Vector::from_i64s(&k, &[1, 0, -1])],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(Subspace::span(&k, 2, &[Vector::from_i64s(&k, &[1, 2, 3])]).is_err());
    }

    #[test]
    fn membership() {
        let k = q();
        let s = Subspace::span(&k, 3, &[Vector::from_i64s(&k, &[0, 1, 0])]).unwrap();
        assert!(s.contains(&Vector::zeros(&k, 3)).unwrap());
        assert!(s.contains(&Vector::from_i64s(&k, &[0, 1, 0])).unwrap());
        assert!(!s.contains(&Vector::from_i64s(&k, &[1, 0, 0])).unwrap());
        assert!(s.contains(&Vector::zeros(&k, 2)).is_err());
    }

    #[test]
    fn lattice_ops() {
        let k = q();
        let e1 = Subspace::span(&k, 3, &[Vector::unit(&k, 3, 0)]).unwrap();
        let e2 = Subspace::span(&k, 3, &[Vector::unit(&k, 3, 1)]).unwrap();
        let zero = Subspace::zero(&k, 3);
        assert_eq!(e1.sum(&zero).unwrap(), e1);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let e12 = Subspace::span(&k, 3, &[Vector::unit(&k, 3, 0), Vector::unit(&k, 3, 1)]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap(), e12);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(e1.is_subspace_of(&e12).unwrap());
        assert!(!e12.is_subspace_of(&e1).unwrap());
        assert!(e1.equals(&Subspace::zero(&k, 2)).is_err());
    }

    #[test]
    fn affine_examples() {
        let k = q();
        let b = Vector::from_i64s(&k, &[3, -1]);
        let sol = solve_affine(&Matrix::identity(&k, 2), &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.directions.is_zero());

        let none = solve_affine(&Matrix::zeros(&k, 2, 2), &Vector::from_i64s(&k, &[1, 0])).unwrap();
        assert!(none.is_none());

        let a = Matrix::from_i64_rows(&k, &[&[1, 0], &[0, 0]]);
        let sol = solve_affine(&a, &Vector::from_i64s(&k, &[1, 0])).unwrap().unwrap();
        assert_eq!(sol.particular, Vector::from_i64s(&k, &[1, 0]));
        assert_eq!(sol.directions, Subspace::span(&k, 2, &[Vector::from_i64s(&k, &[0, 1])]).unwrap());
    }

    #[test]
    fn complement_representatives() {
        let k = q();
        assert_eq!(Subspace::zero(&k, 3).complement_representatives(), vec![0, 1, 2]);
        assert!(Subspace::full(&k, 3).complement_representatives().is_empty());
        let e3 = Subspace::span(&k, 3, &[Vector::unit(&k, 3, 2)]).unwrap();
        assert_eq!(e3.complement_representatives(), vec![0, 1]);
    }

    #[test]
    fn injectivity() {
        let k = PrimeField::new(5).unwrap();
        assert!(LinearMap::identity(&k, 3).is_injective());
        assert!(!LinearMap::zero(&k, 2, 3).is_injective());
    }

    fn arb_rows(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
    }

    fn to_vectors(rows: &[Vec<i64>]) -> Vec<Vector<Rationals>> {
        rows.iter().map(|r| Vector::from_i64s(&Rationals, r)).collect()
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_span_stable(rows in arb_rows(4, 5)) {
            let k = Rationals;
            let vs = to_vectors(&rows);
            let m = Matrix::from_row_vectors(&k, 4, &vs).unwrap();
            let r1 = m.rref();
            let r2 = r1.matrix.rref();
            prop_assert_eq!(&r1.matrix, &r2.matrix);
            let s = Subspace::span(&k, 4, &vs).unwrap();
            prop_assert_eq!(s.dim(), r1.rank);
            let s2 = Subspace::span(&k, 4, s.basis()).unwrap();
            prop_assert_eq!(&s, &s2);
            for v in &vs {
                prop_assert!(s.contains(v).unwrap());
            }
        }

        #[test]
        fn modular_dimension_law(a in arb_rows(4, 4), b in arb_rows(4, 4)) {
            let k = Rationals;
            let sa = Subspace::span(&k, 4, &to_vectors(&a)).unwrap();
            let sb = Subspace::span(&k, 4, &to_vectors(&b)).unwrap();
            let sum = sa.sum(&sb).unwrap();
            let meet = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
            prop_assert!(meet.is_subspace_of(&sa).unwrap());
            prop_assert!(meet.is_subspace_of(&sb).unwrap());
        }

        #[test]
        fn solve_affine_solutions(rows in arb_rows(3, 4), x in prop::collection::vec(-3i64..=3, 3)) {
            let k = Rationals;
            let vs = to_vectors(&rows);
            prop_assume!(!vs.is_empty());
            let a = Matrix::from_row_vectors(&k, 3, &vs).unwrap();
            let b = a.mul_vec(&Vector::from_i64s(&k, &x)).unwrap();
            let sol = solve_affine(&a, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
            for kv in sol.directions.basis() {
                prop_assert!(a.mul_vec(kv).unwrap().is_zero());
            }
        }
    }
}
