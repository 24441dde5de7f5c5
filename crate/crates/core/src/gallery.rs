//! Deterministic example algebras, each with the identity classes it is
//! expected to satisfy or violate.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{derive_angle, derive_bullet, Algebra, Grading};
use crate::error::{Error, Result};
use crate::identity::{check_suite, CheckOptions, Class};
use crate::linalg::{LinearMap, Matrix, Vector};
use crate::scalar::{Field, Rationals, Scalar};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Signed basis product: `e_a e_b = sign · e_c`.
fn signed<K: Field>(k: &K, n: usize, c: usize, sign: i64) -> Vector<K> {
    let mut v = Vector::zeros(k, n);
    v.set(c, k.from_i64(sign));
    v
}

/// Quaternions with basis `1, i, j, k`: `i² = j² = k² = −1`, `ij = k`.
pub fn quaternions<K: Field>(k: &K) -> Result<Algebra<K>> {
    // (index, sign) of e_a e_b
    const T: [[(usize, i64); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let h = Algebra::from_fn("H", k, names(&["1", "i", "j", "k"]), |a, b| signed(k, 4, T[a][b].0, T[a][b].1))?;
    h.with_unit(Vector::unit(k, 4, 0))
}

/// Conjugation `1 ↦ 1`, imaginary units `↦ −` themselves, for an algebra
/// whose basis is `1` followed by imaginary units.
pub fn standard_conjugation<K: Field>(k: &K, n: usize) -> LinearMap<K> {
    let mut m = Matrix::identity(k, n);
    for i in 1..n {
        m.set(i, i, k.from_i64(-1));
    }
    LinearMap::new(m)
}

/// Doubling `A ⊕ A` with `(a,b)(c,d) = (ac + γ d̄ b, da + b c̄)`. The
/// result's conjugation is `(a, b) ↦ (ā, −b)`, which is
/// [`standard_conjugation`] when `A`'s is.
pub fn cayley_dickson<K: Field>(a: &Algebra<K>, conjugation: &LinearMap<K>, gamma: &K::Elem) -> Result<Algebra<K>> {
    let n = a.dim();
    if conjugation.domain_dim() != n || conjugation.codomain_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: conjugation.domain_dim() });
    }
    if gamma.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let k = a.field();
    let bar = |i: usize| conjugation.matrix().column(i);
    let embed = |v: &Vector<K>, offset: usize| {
        let mut out = Vector::zeros(k, 2 * n);
        for (i, c) in v.support() {
            out.set(i + offset, c.clone());
        }
        out
    };
    let basis = a
        .basis_names()
        .iter()
        .cloned()
        .chain(a.basis_names().iter().map(|s| if s == "1" { "l".to_string() } else { format!("{s}l") }))
        .collect();
    let doubled = Algebra::from_fn(format!("CD({})", a.name()), k, basis, |p, q| match (p < n, q < n) {
        (true, true) => embed(a.product(p, q), 0),
        // (e_p, 0)(0, e_q) = (0, e_q e_p)
        (true, false) => embed(a.product(q - n, p), n),
        // (0, e_p)(e_q, 0) = (0, e_p ē_q)
        (false, true) => embed(&a.mul(&a.basis_vector(p - n), &bar(q)), n),
        // (0, e_p)(0, e_q) = (γ ē_q e_p, 0)
        (false, false) => embed(&a.mul(&bar(q - n), &a.basis_vector(p - n)).scaled(gamma), 0),
    })?;
    match a.unit() {
        Some(u) => doubled.with_unit(embed(u, 0)),
        None => Ok(doubled),
    }
}

/// Octonions as the Cayley–Dickson double of the quaternions with `γ = −1`;
/// basis `1, i, j, k, l, il, jl, kl`.
pub fn octonions<K: Field>(k: &K) -> Result<Algebra<K>> {
    let h = quaternions(k)?;
    Ok(cayley_dickson(&h, &standard_conjugation(k, 4), &k.from_i64(-1))?.renamed("O"))
}

/// Stand-in for the 16-dimensional alternative Z₂-algebra: the octonions
/// acting on themselves, `(a,x)(b,y) = (ab, ay + xb)`, even part the first
/// copy, odd part the second.
pub fn o2_standin<K: Field>(k: &K) -> Result<Algebra<K>> {
    let o = octonions(k)?;
    let n = o.dim();
    let basis = o
        .basis_names()
        .iter()
        .cloned()
        .chain(o.basis_names().iter().map(|s| format!("v{s}")))
        .collect();
    let shift = |v: &Vector<K>, offset: usize| {
        let mut out = Vector::zeros(k, 2 * n);
        for (i, c) in v.support() {
            out.set(i + offset, c.clone());
        }
        out
    };
    let alg = Algebra::from_fn("O2-standin", k, basis, |p, q| match (p < n, q < n) {
        (true, true) => shift(o.product(p, q), 0),
        (true, false) => shift(o.product(p, q - n), n),
        (false, true) => shift(o.product(p - n, q), n),
        (false, false) => Vector::zeros(k, 2 * n),
    })?;
    alg.with_grading(Grading::new((0..n).collect(), (n..2 * n).collect()))?
        .with_unit(Vector::unit(k, 2 * n, 0))
}

/// Upper block-triangular `(n1 + n2)`-square matrices. Basis: the diagonal
/// blocks' matrix units (even), then the off-diagonal block's (odd), each
/// in row-major order.
pub fn block_triangular<K: Field>(k: &K, n1: usize, n2: usize) -> Result<Algebra<K>> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Schema("block sizes must be positive".into()));
    }
    let size = n1 + n2;
    let mut units: Vec<(usize, usize)> = Vec::new();
    for a in 0..n1 {
        for b in 0..n1 {
            units.push((a, b));
        }
    }
    for a in n1..size {
        for b in n1..size {
            units.push((a, b));
        }
    }
    let even = units.len();
    for a in 0..n1 {
        for b in n1..size {
            units.push((a, b));
        }
    }
    let dim = units.len();
    let basis = units.iter().map(|(a, b)| format!("E{}{}", a + 1, b + 1)).collect();
    let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
    // E_ab E_cd = δ_bc E_ad
    let alg = Algebra::from_fn(format!("T({n1},{n2})"), k, basis, |p, q| {
        let ((a, b), (c, d)) = (units[p], units[q]);
        match (b == c).then(|| index(a, d)).flatten() {
            Some(r) => Vector::unit(k, dim, r),
            None => Vector::zeros(k, dim),
        }
    })?;
    let mut unit = Vector::zeros(k, dim);
    for a in 0..size {
        unit.set(index(a, a).expect("diagonal units are basis elements"), k.one());
    }
    alg.with_grading(Grading::new((0..even).collect(), (even..dim).collect()))?.with_unit(unit)
}

/// `T(1,1)` with `E11·E11 = E11 + E22`: graded, neither associative nor
/// alternative. Its bullet algebra fails the Jordan identity.
pub fn twisted_triangular<K: Field>(k: &K) -> Result<Algebra<K>> {
    let t = block_triangular(k, 1, 1)?;
    let grading = t.grading().cloned().expect("T(1,1) is graded");
    let twisted = Algebra::from_fn("T(1,1)-twisted", k, t.basis_names().to_vec(), |i, j| {
        if (i, j) == (0, 0) {
            Vector::from_i64s(k, &[1, 1, 0])
        } else {
            t.product(i, j).clone()
        }
    })?;
    twisted.with_grading(grading)
}

/// Two-dimensional right Leibniz algebra: `e·e = f`, all else zero.
pub fn leibniz2<K: Field>(k: &K) -> Result<Algebra<K>> {
    Algebra::from_fn("leibniz2", k, names(&["e", "f"]), |i, j| {
        if i == 0 && j == 0 {
            Vector::unit(k, 2, 1)
        } else {
            Vector::zeros(k, 2)
        }
    })
}

fn commutator_algebra<K: Field>(alg: &Algebra<K>, keep: &[usize], name: &str) -> Result<Algebra<K>> {
    let k = alg.field();
    let basis = keep.iter().map(|&i| alg.basis_names()[i].clone()).collect();
    let m = keep.len();
    let mut failure = None;
    let out = Algebra::from_fn(name, k, basis, |p, q| {
        let c = alg.product(keep[p], keep[q]) - alg.product(keep[q], keep[p]);
        let mut v = Vector::zeros(k, m);
        for (i, x) in c.support() {
            match keep.iter().position(|&kk| kk == i) {
                Some(r) => v.set(r, x.clone()),
                None => failure = Some(format!("commutator leaves the span at {}", alg.basis_names()[i])),
            }
        }
        v
    })?;
    match failure {
        Some(f) => Err(Error::Expectation { example: name.into(), detail: f }),
        None => Ok(out),
    }
}

/// Imaginary octonions under the commutator `xy − yx`.
pub fn malcev7<K: Field>(k: &K) -> Result<Algebra<K>> {
    commutator_algebra(&octonions(k)?, &[1, 2, 3, 4, 5, 6, 7], "malcev7")
}

/// 2×2 matrices under the commutator.
pub fn gl2_commutator<K: Field>(k: &K) -> Result<Algebra<K>> {
    let m = Algebra::from_fn("M2", k, names(&["E11", "E12", "E21", "E22"]), |p, q| {
        let unit = |r: usize| (r / 2, r % 2);
        let ((a, b), (c, d)) = (unit(p), unit(q));
        if b == c {
            Vector::unit(k, 4, 2 * a + d)
        } else {
            Vector::zeros(k, 4)
        }
    })?;
    commutator_algebra(&m, &[0, 1, 2, 3], "gl2")
}

/// A named construction with the classes it must pass and fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRecipe {
    pub name: String,
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<usize>,
    pub expect_pass: Vec<Class>,
    pub expect_fail: Vec<Class>,
}

fn recipe(name: &str, description: &str, parameters: Vec<usize>, pass: &[Class], fail: &[Class]) -> ExampleRecipe {
    ExampleRecipe {
        name: name.into(),
        description: description.into(),
        parameters,
        expect_pass: pass.to_vec(),
        expect_fail: fail.to_vec(),
    }
}

/// Every gallery recipe, in manifest order.
pub fn recipes() -> Vec<ExampleRecipe> {
    use Class::*;
    vec![
        recipe("quaternions", "quaternions H", vec![], &[Associative, Alternative], &[Commutative]),
        recipe("octonions", "octonions CD(H, -1)", vec![], &[Alternative], &[Associative, Commutative]),
        recipe(
            "o2-standin",
            "octonions split null extension by themselves; a stand-in with the required properties",
            vec![],
            &[Alternative],
            &[Associative],
        ),
        recipe("block-triangular", "T(1,1) upper triangular 2x2 matrices", vec![1, 1], &[Associative], &[Commutative]),
        recipe("block-triangular", "T(2,1)", vec![2, 1], &[Associative], &[Commutative]),
        recipe("t11-bullet", "bullet algebra of T(1,1)", vec![], &[GeneralizedJordan], &[Commutative, Jordan]),
        recipe("t21-bullet", "bullet algebra of T(2,1)", vec![], &[GeneralizedJordan], &[Commutative, Jordan]),
        recipe("t11-angle", "angle algebra of T(1,1)", vec![], &[GeneralizedMalcev], &[Anticommutative, Malcev]),
        recipe(
            "o2-standin-angle",
            "angle algebra of the O2 stand-in",
            vec![],
            &[GeneralizedMalcev],
            &[Anticommutative, Malcev],
        ),
        recipe(
            "o2-standin-bullet",
            "bullet algebra of the O2 stand-in; the alternative source still satisfies every generalized Jordan identity",
            vec![],
            &[GeneralizedJordan],
            &[Commutative, Jordan],
        ),
        recipe("t11-twisted", "T(1,1) with E11·E11 = E11 + E22", vec![], &[], &[Associative, Alternative]),
        recipe(
            "t11-twisted-bullet",
            "bullet algebra of a non-alternative source",
            vec![],
            &[],
            &[GeneralizedJordan, Jordan],
        ),
        recipe("leibniz2", "e·e = f", vec![], &[Leibniz, GeneralizedMalcev], &[Anticommutative, Lie]),
        recipe("malcev7", "imaginary octonions under the commutator", vec![], &[Malcev, GeneralizedMalcev], &[Lie]),
        recipe("gl2", "2x2 matrices under the commutator", vec![], &[Lie, Malcev, Leibniz, GeneralizedMalcev], &[]),
    ]
}

/// Builds an example by name; `params` are the block sizes for
/// `block-triangular` and are ignored otherwise.
pub fn build_example<K: Field>(k: &K, name: &str, params: &[usize]) -> Result<Algebra<K>> {
    let bt = |n1, n2| block_triangular(k, n1, n2);
    match name {
        "quaternions" => quaternions(k),
        "octonions" => octonions(k),
        "o2-standin" => o2_standin(k),
        "block-triangular" => match params {
            [] => bt(1, 1),
            [n1, n2] => bt(*n1, *n2),
            _ => Err(Error::Schema("block-triangular takes two block sizes".into())),
        },
        "t11-bullet" => derive_bullet(&bt(1, 1)?),
        "t21-bullet" => derive_bullet(&bt(2, 1)?),
        "t11-angle" => derive_angle(&bt(1, 1)?),
        "o2-standin-angle" => derive_angle(&o2_standin(k)?),
        "o2-standin-bullet" => derive_bullet(&o2_standin(k)?),
        "t11-twisted" => twisted_triangular(k),
        "t11-twisted-bullet" => derive_bullet(&twisted_triangular(k)?),
        "leibniz2" => leibniz2(k),
        "malcev7" => malcev7(k),
        "gl2" => gl2_commutator(k),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

pub fn example_names() -> Vec<&'static str> {
    vec![
        "quaternions",
        "octonions",
        "o2-standin",
        "block-triangular",
        "t11-bullet",
        "t21-bullet",
        "t11-angle",
        "o2-standin-angle",
        "o2-standin-bullet",
        "t11-twisted",
        "t11-twisted-bullet",
        "leibniz2",
        "malcev7",
        "gl2",
    ]
}

/// Checks a recipe's expectations; a violated expectation is an error
/// carrying the counterexample or the offending class.
pub fn verify_recipe<K: Field>(alg: &Algebra<K>, r: &ExampleRecipe, opts: &CheckOptions) -> Result<()> {
    for &c in &r.expect_pass {
        let s = check_suite(alg, c, opts)?;
        if let Some(f) = s.first_failure() {
            return Err(Error::Expectation {
                example: alg.name().into(),
                detail: format!("expected {}: {}", c.label(), f.summary(alg)),
            });
        }
    }
    for &c in &r.expect_fail {
        let s = check_suite(alg, c, opts)?;
        match s.first_failure() {
            None => {
                return Err(Error::Expectation {
                    example: alg.name().into(),
                    detail: format!("expected a {} identity to fail, but all hold", c.label()),
                })
            }
            Some(f) if !f.recheck(alg)? => {
                return Err(Error::Expectation {
                    example: alg.name().into(),
                    detail: format!("counterexample for {} does not recheck", f.identity),
                })
            }
            Some(_) => {}
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub dim: usize,
    pub field: String,
    pub recipe: ExampleRecipe,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

fn file_stem(r: &ExampleRecipe) -> String {
    if r.parameters.is_empty() {
        r.name.clone()
    } else {
        let p: Vec<String> = r.parameters.iter().map(|x| x.to_string()).collect();
        format!("{}-{}", r.name, p.join("-"))
    }
}

/// Builds every recipe over Q, verifies its expectations, and writes one
/// algebra file per example plus `manifest.json` into `dir`. Files carry
/// only the associative/alternative flags, which are re-verified on load.
pub fn gallery_manifest(dir: &Path, opts: &CheckOptions) -> Result<Manifest> {
    std::fs::create_dir_all(dir)?;
    let k = Rationals;
    let mut entries = Vec::new();
    for r in recipes() {
        let alg = build_example(&k, &r.name, &r.parameters)?;
        verify_recipe(&alg, &r, opts)?;
        let flags: Vec<String> = r
            .expect_pass
            .iter()
            .filter(|c| matches!(c, Class::Associative | Class::Alternative))
            .map(|c| c.label().to_string())
            .collect();
        let text = alg.clone().with_flags(flags).to_json() + "\n";
        let file = format!("{}.json", file_stem(&r));
        std::fs::write(dir.join(&file), &text)?;
        entries.push(ManifestEntry {
            name: alg.name().to_string(),
            file,
            dim: alg.dim(),
            field: alg.field().descriptor().to_string(),
            recipe: r,
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest { entries };
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(manifest)
}
