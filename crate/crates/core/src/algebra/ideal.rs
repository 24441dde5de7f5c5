use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{right_jacobian, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Matrix, Subspace, Vector};
use crate::scalar::Field;

/// Which annihilator: commutators `[x, y]`, or `J(x, x, y)` and `x·x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnihilatorKind {
    Jordan,
    Malcev,
}

impl fmt::Display for AnnihilatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnnihilatorKind::Jordan => "jordan",
            AnnihilatorKind::Malcev => "malcev",
        })
    }
}

impl FromStr for AnnihilatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jordan" => Ok(AnnihilatorKind::Jordan),
            "malcev" => Ok(AnnihilatorKind::Malcev),
            other => Err(Error::Schema(format!("unknown annihilator kind {other:?} (expected jordan or malcev)"))),
        }
    }
}

/// Span of `e_i e_j − e_j e_i` over `i < j`; by bilinearity this is the
/// span of all commutators.
pub fn annihilator_jordan<K: Field>(alg: &Algebra<K>) -> Subspace<K> {
    let n = alg.dim();
    let mut s = Subspace::zero(alg.field(), n);
    for i in 0..n {
        for j in i + 1..n {
            let c = alg.product(i, j) - alg.product(j, i);
            s.insert(&c).expect("table vectors have length dim");
        }
    }
    s
}

/// Span of `J(x, x, y)` and `x·x` over all `x, y`. Polarizing the quadratic
/// slot reduces this to `J(e_i, e_j, e_k) + J(e_j, e_i, e_k)` and
/// `e_i e_j + e_j e_i` over `i <= j`, since 2 is invertible.
pub fn annihilator_malcev<K: Field>(alg: &Algebra<K>) -> Subspace<K> {
    let n = alg.dim();
    let mut s = Subspace::zero(alg.field(), n);
    let e: Vec<Vector<K>> = (0..n).map(|i| alg.basis_vector(i)).collect();
    for i in 0..n {
        for j in i..n {
            let sq = alg.product(i, j) + alg.product(j, i);
            s.insert(&sq).expect("length dim");
            for k in 0..n {
                let a = right_jacobian(alg, &e[i], &e[j], &e[k]).expect("length dim");
                let b = right_jacobian(alg, &e[j], &e[i], &e[k]).expect("length dim");
                s.insert(&(&a + &b)).expect("length dim");
            }
        }
    }
    s
}

pub fn annihilator<K: Field>(alg: &Algebra<K>, kind: AnnihilatorKind) -> Subspace<K> {
    match kind {
        AnnihilatorKind::Jordan => annihilator_jordan(alg),
        AnnihilatorKind::Malcev => annihilator_malcev(alg),
    }
}

/// Smallest two-sided ideal containing `vectors`, by worklist iteration.
/// `max_iters` bounds the number of processed vectors.
pub fn ideal_closure<K: Field>(alg: &Algebra<K>, vectors: &[Vector<K>], max_iters: Option<usize>) -> Result<Subspace<K>> {
    let n = alg.dim();
    let mut s = Subspace::zero(alg.field(), n);
    let mut queue = Vec::new();
    for v in vectors {
        if s.insert(v)? {
            queue.push(v.clone());
        }
    }
    let mut iters = 0usize;
    while let Some(v) = queue.pop() {
        iters += 1;
        if let Some(limit) = max_iters {
            if iters > limit {
                return Err(Error::Budget(format!("ideal closure exceeded {limit} iterations")));
            }
        }
        for i in 0..n {
            let e = alg.basis_vector(i);
            for w in [alg.mul(&e, &v), alg.mul(&v, &e)] {
                if s.insert(&w)? {
                    queue.push(w);
                }
            }
            if s.is_full() {
                return Ok(s);
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A product that leaves a subspace: `e_i · w` (left) or `w · e_i` (right)
/// for the basis vector `w` of the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealWitness<K: Field> {
    pub side: Side,
    pub basis_index: usize,
    pub element: Vector<K>,
    pub product: Vector<K>,
}

impl<K: Field> IdealWitness<K> {
    pub fn describe(&self, alg: &Algebra<K>) -> String {
        let (e, w) = (&alg.basis_names()[self.basis_index], alg.format_vector(&self.element));
        let lhs = match self.side {
            Side::Left => format!("{e}·({w})"),
            Side::Right => format!("({w})·{e}"),
        };
        format!("{lhs} = {} leaves the subspace", alg.format_vector(&self.product))
    }
}

/// `None` if `s` is closed under multiplication by every basis element on
/// both sides, otherwise the first escaping product.
pub fn is_ideal<K: Field>(alg: &Algebra<K>, s: &Subspace<K>) -> Result<Option<IdealWitness<K>>> {
    if s.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: s.ambient_dim() });
    }
    for w in s.basis() {
        for i in 0..alg.dim() {
            let e = alg.basis_vector(i);
            for (side, p) in [(Side::Left, alg.mul(&e, w)), (Side::Right, alg.mul(w, &e))] {
                if !s.contains(&p)? {
                    return Ok(Some(IdealWitness { side, basis_index: i, element: w.clone(), product: p }));
                }
            }
        }
    }
    Ok(None)
}

/// `A / I` on the non-pivot basis vectors of `I`, with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient<K: Field> {
    pub algebra: Algebra<K>,
    pub projection: LinearMap<K>,
    pub representatives: Vec<usize>,
}

pub fn quotient_algebra<K: Field>(alg: &Algebra<K>, ideal: &Subspace<K>) -> Result<Quotient<K>> {
    if let Some(w) = is_ideal(alg, ideal)? {
        return Err(Error::NotAnIdeal(w.describe(alg)));
    }
    let k = alg.field();
    let reps = ideal.complement_representatives();
    let m = reps.len();
    let project = |v: &Vector<K>| {
        let r = ideal.reduce(v);
        Vector::from_entries(k, reps.iter().map(|&i| r.get(i).clone()).collect())
    };
    let names = reps.iter().map(|&i| alg.basis_names()[i].clone()).collect();
    let mut q = Algebra::from_fn(format!("{}/I", alg.name()), k, names, |a, b| {
        project(alg.product(reps[a], reps[b]))
    })?;
    if let Some(u) = alg.unit() {
        if m > 0 {
            q = q.with_unit(project(u))?;
        }
    }
    let columns: Vec<Vector<K>> = (0..alg.dim()).map(|j| project(&alg.basis_vector(j))).collect();
    let projection = LinearMap::new(Matrix::from_columns(k, m, &columns)?);
    Ok(Quotient { algebra: q, projection, representatives: reps })
}
