use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::{solve_affine, AffineSet, Matrix, Vector};
use crate::scalar::Field;

/// All `u` with `x·u = x` for every `x`. Linear in `u`, so it suffices to
/// impose `e_i·u = e_i` for each basis element; `None` if there is no solution.
pub fn find_right_units<K: Field>(alg: &Algebra<K>) -> Result<Option<AffineSet<K>>> {
    let n = alg.dim();
    let k = alg.field();
    // row (i, l): Σ_c u_c (e_i e_c)_l = δ_il
    let mut a = Matrix::zeros(k, n * n, n);
    let mut b = Vector::zeros(k, n * n);
    for i in 0..n {
        for c in 0..n {
            for (l, t) in alg.product_support(i, c) {
                a.set(i * n + l, c, t.clone());
            }
        }
        b.set(i * n + i, k.one());
    }
    solve_affine(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{annihilator_jordan, derive_bullet};
    use crate::gallery;
    use crate::scalar::Rationals;

    #[test]
    fn right_units_of_triangular_bullet() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let b = derive_bullet(&t).unwrap();
        let units = find_right_units(&b).unwrap().unwrap();
        assert_eq!(units.particular, Vector::from_i64s(&Rationals, &[1, 1, 0]));
        assert_eq!(units.directions, annihilator_jordan(&b));
    }

    #[test]
    fn zero_product_has_no_right_unit() {
        let k = Rationals;
        let z = Algebra::from_fn("zero", &k, vec!["a".into(), "b".into()], |_, _| Vector::zeros(&k, 2)).unwrap();
        assert!(find_right_units(&z).unwrap().is_none());
    }

    #[test]
    fn unit_is_unique_in_commutative_unital_algebra() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let b = derive_bullet(&t).unwrap();
        let q = crate::algebra::quotient_algebra(&b, &annihilator_jordan(&b)).unwrap().algebra;
        let units = find_right_units(&q).unwrap().unwrap();
        assert!(units.directions.is_zero());
        assert_eq!(units.particular, Vector::from_i64s(&Rationals, &[1, 1]));
    }
}
