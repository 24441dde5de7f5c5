use crate::algebra::{Algebra, Provenance};
use crate::error::{Error, Result};
use crate::identity::{check_suite, CheckOptions, Class};
use crate::linalg::Vector;
use crate::scalar::Field;

fn source_warnings<K: Field>(alg: &Algebra<K>, class: Class) -> Result<Vec<String>> {
    let report = check_suite(alg, class, &CheckOptions::default())?;
    Ok(match report.first_failure() {
        Some(f) => vec![format!("source is not {}: {}", class.label(), f.summary(alg))],
        None => Vec::new(),
    })
}

/// `x • y = ½(x y₀ + y₀ x)` on the basis. The source should be associative;
/// if it is not, the result carries a provenance warning.
pub fn derive_bullet<K: Field>(alg: &Algebra<K>) -> Result<Algebra<K>> {
    let g = alg.grading().ok_or_else(|| Error::Ungraded(alg.name().to_string()))?;
    let k = alg.field();
    let half = k.inv(&k.from_i64(2))?;
    let warnings = source_warnings(alg, Class::Associative)?;
    let n = alg.dim();
    let out = Algebra::from_fn(format!("{}-bullet", alg.name()), k, alg.basis_names().to_vec(), |i, j| {
        if g.is_odd(j) {
            return Vector::zeros(k, n);
        }
        (alg.product(i, j) + alg.product(j, i)).scaled(&half)
    })?;
    Ok(out.with_provenance(Provenance {
        source: Some(alg.name().to_string()),
        construction: "bullet: x•y = ½(x·y₀ + y₀·x)".into(),
        warnings,
    }))
}

/// `⟨x, y⟩ = x y₀ − y₀ x` on the basis. The source should be alternative;
/// if it is not, the result carries a provenance warning.
pub fn derive_angle<K: Field>(alg: &Algebra<K>) -> Result<Algebra<K>> {
    let g = alg.grading().ok_or_else(|| Error::Ungraded(alg.name().to_string()))?;
    let k = alg.field();
    let warnings = source_warnings(alg, Class::Alternative)?;
    let n = alg.dim();
    let out = Algebra::from_fn(format!("{}-angle", alg.name()), k, alg.basis_names().to_vec(), |i, j| {
        if g.is_odd(j) {
            return Vector::zeros(k, n);
        }
        alg.product(i, j) - alg.product(j, i)
    })?;
    Ok(out.with_provenance(Provenance {
        source: Some(alg.name().to_string()),
        construction: "angle: ⟨x,y⟩ = x·y₀ − y₀·x".into(),
        warnings,
    }))
}

/// `J(x, y, z) = (xy)z − x(yz) − (xz)y` in the algebra's own product.
pub fn right_jacobian<K: Field>(alg: &Algebra<K>, x: &Vector<K>, y: &Vector<K>, z: &Vector<K>) -> Result<Vector<K>> {
    let xy = alg.multiply(x, y)?;
    let yz = alg.multiply(y, z)?;
    let xz = alg.multiply(x, z)?;
    let first = alg.mul(&xy, z);
    let second = alg.mul(x, &yz);
    let third = alg.mul(&xz, y);
    Ok(&(&first - &second) - &third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::scalar::Rationals;

    fn q(n: i64, d: i64) -> num_rational::BigRational {
        num_rational::BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bullet_of_triangular() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let b = derive_bullet(&t).unwrap();
        assert_eq!(b.name(), "T(1,1)-bullet");
        assert!(b.grading().is_none());
        // E12 • E11 = ½(E12·E11 + E11·E12) = ½ E12
        let mut half_e12 = Vector::zeros(&Rationals, 3);
        half_e12.set(2, q(1, 2));
        assert_eq!(b.product(2, 0), &half_e12);
        // odd right factor
        for i in 0..3 {
            assert!(b.product(i, 2).is_zero());
        }
        // x • 1 = x
        let one = t.unit().unwrap();
        for i in 0..3 {
            assert_eq!(b.mul(&b.basis_vector(i), one), b.basis_vector(i));
        }
        assert!(b.provenance().unwrap().warnings.is_empty());
    }

    #[test]
    fn angle_of_triangular() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let a = derive_angle(&t).unwrap();
        // ⟨E12, E11⟩ = E12·E11 − E11·E12 = −E12
        assert_eq!(a.product(2, 0), &Vector::from_i64s(&Rationals, &[0, 0, -1]));
        let one = t.unit().unwrap();
        for i in 0..3 {
            assert!(a.mul(&a.basis_vector(i), one).is_zero());
            assert!(a.product(i, 2).is_zero());
        }
        let j = right_jacobian(&a, &a.basis_vector(2), &a.basis_vector(0), &a.basis_vector(1)).unwrap();
        assert!(j.is_zero());
    }

    #[test]
    fn ungraded_sources_are_rejected() {
        let o = gallery::octonions(&Rationals).unwrap();
        assert!(matches!(derive_bullet(&o), Err(Error::Ungraded(_))));
        assert!(matches!(derive_angle(&o), Err(Error::Ungraded(_))));
    }

    #[test]
    fn non_associative_source_is_flagged() {
        let o2 = gallery::o2_standin(&Rationals).unwrap();
        let b = derive_bullet(&o2).unwrap();
        let w = &b.provenance().unwrap().warnings;
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("associative"));
        assert!(derive_angle(&o2).unwrap().provenance().unwrap().warnings.is_empty());
    }

    #[test]
    fn jacobian_vanishes_on_lie_and_leibniz() {
        for alg in [gallery::gl2_commutator(&Rationals).unwrap(), gallery::leibniz2(&Rationals).unwrap()] {
            let n = alg.dim();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = right_jacobian(&alg, &alg.basis_vector(i), &alg.basis_vector(j), &alg.basis_vector(k));
                        assert!(v.unwrap().is_zero(), "{} at {i},{j},{k}", alg.name());
                    }
                }
            }
        }
    }
}
