//! Cross-module properties over randomly transformed gallery algebras.

use proptest::prelude::*;

use crate::algebra::{
    annihilator, derive_angle, derive_bullet, find_right_units, ideal_closure, is_ideal, Algebra, AnnihilatorKind,
};
use crate::gallery;
use crate::identity::{check_identity, check_suite, evaluate_term, lookup, CheckOptions, Class, Expr};
use crate::linalg::{solve_affine, Matrix, Subspace, Vector};
use crate::prover::{consequence_space, prove_congruent, Relation};
use crate::scalar::{Field, Rationals};

/// Random invertible matrix preserving the even/odd split of `alg`.
fn graded_basis_change(alg: &Algebra<Rationals>, seeds: &[i64]) -> Option<Matrix<Rationals>> {
    let k = Rationals;
    let n = alg.dim();
    let g = alg.grading()?;
    let mut m = Matrix::identity(&k, n);
    let mut it = seeds.iter().cycle();
    for block in [&g.even, &g.odd] {
        for &i in block.iter() {
            for &j in block.iter() {
                let s = *it.next().unwrap();
                let v = if i == j { s.rem_euclid(3) + 1 } else { s % 3 };
                m.set(i, j, k.from_i64(v));
            }
        }
    }
    (m.rank() == n).then_some(m)
}

/// The same algebra written in the basis given by the columns of `p`.
fn change_basis(alg: &Algebra<Rationals>, p: &Matrix<Rationals>) -> Algebra<Rationals> {
    let k = Rationals;
    let n = alg.dim();
    let cols: Vec<Vector<Rationals>> = (0..n).map(|j| p.column(j)).collect();
    let back = |v: Vector<Rationals>| solve_affine(p, &v).unwrap().unwrap().particular;
    let mut out = Algebra::from_fn(alg.name(), &k, alg.basis_names().to_vec(), |i, j| back(alg.mul(&cols[i], &cols[j])))
        .unwrap();
    if let Some(g) = alg.grading() {
        out = out.with_grading(g.clone()).unwrap();
    }
    if let Some(u) = alg.unit() {
        out = out.with_unit(back(u.clone())).unwrap();
    }
    out
}

fn rebased_triangular(n1: usize, n2: usize, seeds: &[i64]) -> Option<Algebra<Rationals>> {
    let t = gallery::block_triangular(&Rationals, n1, n2).unwrap();
    let p = graded_basis_change(&t, seeds)?;
    Some(change_basis(&t, &p))
}

fn seeds() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bullet_of_graded_associative_is_generalized_jordan(n1 in 1usize..3, n2 in 1usize..3, s in seeds()) {
        let Some(t) = rebased_triangular(n1, n2, &s) else { return Ok(()) };
        prop_assert!(check_suite(&t, Class::Associative, &CheckOptions::exhaustive()).unwrap().holds());
        let b = derive_bullet(&t).unwrap();
        prop_assert!(check_suite(&b, Class::GeneralizedJordan, &CheckOptions::exhaustive()).unwrap().holds());
    }

    #[test]
    fn right_units_are_unit_plus_annihilator(n1 in 1usize..3, n2 in 1usize..3, s in seeds()) {
        let Some(t) = rebased_triangular(n1, n2, &s) else { return Ok(()) };
        let b = derive_bullet(&t).unwrap();
        let ann = annihilator(&b, AnnihilatorKind::Jordan);
        let units = find_right_units(&b).unwrap().unwrap();
        prop_assert!(units.directions.equals(&ann).unwrap());
        let one = t.unit().unwrap();
        prop_assert!(ann.contains(&(&units.particular - one)).unwrap());
        prop_assert!(is_ideal(&b, &ann).unwrap().is_none());
        prop_assert!(ideal_closure(&b, ann.basis(), None).unwrap().equals(&ann).unwrap());
    }

    #[test]
    fn annihilator_is_a_right_annihilator(n1 in 1usize..3, n2 in 1usize..3, s in seeds()) {
        let Some(t) = rebased_triangular(n1, n2, &s) else { return Ok(()) };
        for (d, kind) in [
            (derive_bullet(&t).unwrap(), AnnihilatorKind::Jordan),
            (derive_angle(&t).unwrap(), AnnihilatorKind::Malcev),
        ] {
            for z in annihilator(&d, kind).basis() {
                for w in 0..d.dim() {
                    prop_assert!(d.mul(&d.basis_vector(w), z).is_zero());
                }
            }
        }
    }

    #[test]
    fn consequence_generators_vanish_on_instances(a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
        let cases = [
            (Relation::Anticommutativity, gallery::malcev7(&Rationals).unwrap()),
            (Relation::RightAnticommutativity, derive_angle(&gallery::block_triangular(&Rationals, 1, 1).unwrap()).unwrap()),
        ];
        for (rel, alg) in cases {
            let space = consequence_space(&[rel], &[2, 1, 1]).unwrap();
            let pick = |i: usize| alg.basis_vector(i % alg.dim());
            let assignment = [pick(a + d), pick(b), pick(c + 2 * d)];
            for v in space.space.basis() {
                let mut total = alg.zero_vector();
                for (m, coeff) in space.basis.iter().zip(v.entries()) {
                    let value = evaluate_term(&alg, &Expr::from(m), &assignment).unwrap();
                    total = &total + &value.scaled(coeff);
                }
                prop_assert!(total.is_zero(), "{rel} consequence nonzero on {}", alg.name());
            }
        }
    }
}

#[test]
fn congruence_agrees_with_gallery_verdicts() {
    let pairs = [
        ("angle-identity-1", "jacobian-form-1", Relation::RightAnticommutativity, "right-anticommutativity"),
        ("angle-identity-2", "malcev-identity", Relation::Anticommutativity, "anticommutativity"),
        ("angle-identity-3", "jacobian-form-3", Relation::RightAnticommutativity, "right-anticommutativity"),
    ];
    for (a, b, rel, rel_id) in pairs {
        let (ia, ib) = (lookup(a).unwrap(), lookup(b).unwrap());
        let equivalent = prove_congruent(&ia, &ib, &[rel]).map(|c| c.verdict.is_equivalent()).unwrap_or(false);
        if !equivalent {
            continue;
        }
        for name in gallery::example_names() {
            let alg = gallery::build_example(&Rationals, name, &[]).unwrap();
            let opts = CheckOptions::exhaustive();
            if !check_identity(&alg, &lookup(rel_id).unwrap(), &opts).unwrap().holds() {
                continue;
            }
            let ha = check_identity(&alg, &ia, &opts).unwrap().holds();
            let hb = check_identity(&alg, &ib, &opts).unwrap().holds();
            assert_eq!(ha, hb, "{a} and {b} disagree on {name}");
        }
    }
}

#[test]
fn basis_change_preserves_structure() {
    let t = gallery::block_triangular(&Rationals, 2, 1).unwrap();
    let p = graded_basis_change(&t, &[1, 2, -1, 0, 3, 1, 2, -2, 1]).unwrap();
    let u = change_basis(&t, &p);
    let ann_t = annihilator(&derive_bullet(&t).unwrap(), AnnihilatorKind::Jordan);
    let ann_u = annihilator(&derive_bullet(&u).unwrap(), AnnihilatorKind::Jordan);
    assert_eq!(ann_t.dim(), ann_u.dim());
    let full = Subspace::full(&Rationals, u.dim());
    assert!(ideal_closure(&u, u.unit().into_iter().cloned().collect::<Vec<_>>().as_slice(), None)
        .unwrap()
        .equals(&full)
        .unwrap());
}
