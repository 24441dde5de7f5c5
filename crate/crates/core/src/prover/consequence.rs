use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::identity::Term;
use crate::linalg::{Subspace, Vector};
use crate::prover::free::{enumerate_monomials, FreeMonomial};
use crate::scalar::Rationals;

/// Multilinear defining relations of a class, used as rewriting hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `r(a,b,c) = a(bc) + a(cb)`
    RightAnticommutativity,
    /// `g(a,b) = ab + ba`
    Anticommutativity,
}

impl Relation {
    pub fn formula(self) -> &'static str {
        match self {
            Relation::RightAnticommutativity => "a(bc) + a(cb)",
            Relation::Anticommutativity => "ab + ba",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::RightAnticommutativity => f.write_str("right-anticommutativity"),
            Relation::Anticommutativity => f.write_str("anticommutativity"),
        }
    }
}

/// Span of all relation instances inside one multidegree component.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace {
    pub multidegree: Vec<usize>,
    pub relations: Vec<Relation>,
    pub basis: Vec<FreeMonomial>,
    pub generators: usize,
    pub space: Subspace<Rationals>,
}

impl ConsequenceSpace {
    pub fn monomial_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Every tree obtained from `t` by swapping the children of exactly one
/// node accepted by `at`.
pub(crate) fn single_swaps(t: &Term, at: &dyn Fn(&Term) -> bool) -> Vec<Term> {
    let mut out = Vec::new();
    if let Term::Mul(a, b) = t {
        if at(t) {
            out.push(Term::mul((**b).clone(), (**a).clone()));
        }
        for a2 in single_swaps(a, at) {
            out.push(Term::mul(a2, (**b).clone()));
        }
        for b2 in single_swaps(b, at) {
            out.push(Term::mul((**a).clone(), b2));
        }
    }
    out
}

/// Rewrites of `t` under one relation: for `r`, the children of a composite
/// right child are swapped; for `g`, the children of any node.
pub(crate) fn relation_rewrites(t: &Term, rel: Relation) -> Vec<Term> {
    match rel {
        Relation::Anticommutativity => single_swaps(t, &|_| true),
        Relation::RightAnticommutativity => {
            // swapping the children of a node that is some node's right child
            fn go(t: &Term, out: &mut Vec<Term>) {
                if let Term::Mul(a, b) = t {
                    if let Term::Mul(b1, b2) = &**b {
                        out.push(Term::mul((**a).clone(), Term::mul((**b2).clone(), (**b1).clone())));
                    }
                    let mut left = Vec::new();
                    go(a, &mut left);
                    out.extend(left.into_iter().map(|a2| Term::mul(a2, (**b).clone())));
                    let mut right = Vec::new();
                    go(b, &mut right);
                    out.extend(right.into_iter().map(|b2| Term::mul((**a).clone(), b2)));
                }
            }
            let mut out = Vec::new();
            go(t, &mut out);
            out
        }
    }
}

/// Consequence space of `relations` in the component `multidegree`: the span
/// of `t + t'` over monomials `t` and single relation rewrites `t'`.
pub fn consequence_space(relations: &[Relation], multidegree: &[usize]) -> Result<ConsequenceSpace> {
    let basis = enumerate_monomials(multidegree)?;
    let one = BigRational::one();
    // generators are produced per monomial in parallel, then inserted in basis order
    let per_monomial: Vec<Vec<Vector<Rationals>>> = basis
        .par_iter()
        .map(|t| {
            let mut gens = Vec::new();
            for &rel in relations {
                for t2 in relation_rewrites(t, rel) {
                    let mut v = Vector::zeros(&Rationals, basis.len());
                    let i = basis.binary_search(t).expect("enumerated");
                    let j = basis.binary_search(&t2).expect("rewrites stay in the component");
                    v.set(i, one.clone());
                    let cur = v.get(j).clone();
                    v.set(j, cur + one.clone());
                    gens.push(v);
                }
            }
            gens
        })
        .collect();
    let mut space = Subspace::zero(&Rationals, basis.len());
    let mut generators = 0;
    for gens in &per_monomial {
        for g in gens {
            generators += 1;
            space.insert(g)?;
        }
    }
    Ok(ConsequenceSpace {
        multidegree: multidegree.to_vec(),
        relations: relations.to_vec(),
        basis,
        generators,
        space,
    })
}
