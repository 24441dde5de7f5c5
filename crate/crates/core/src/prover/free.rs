use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identity::{IdentityDef, Term};
use crate::linalg::Vector;
use crate::scalar::{format_rational, Rationals};

/// Monomials of the free magma: binary trees with variable-labeled leaves.
pub type FreeMonomial = Term;

/// Largest total degree [`enumerate_monomials`] accepts.
pub const MAX_FREE_DEGREE: usize = 6;

/// All tree shapes with `n` leaves (leaf labels all 0).
fn shapes(n: usize) -> Vec<Term> {
    if n == 1 {
        return vec![Term::var(0)];
    }
    let mut out = Vec::new();
    for left in 1..n {
        for l in shapes(left) {
            for r in shapes(n - left) {
                out.push(Term::mul(l.clone(), r));
            }
        }
    }
    out
}

/// Distinct arrangements of a multiset, in lexicographic order.
fn arrangements(multidegree: &[usize]) -> Vec<Vec<usize>> {
    fn go(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for v in 0..left.len() {
            if left[v] > 0 {
                left[v] -= 1;
                cur.push(v);
                go(left, cur, total, out);
                cur.pop();
                left[v] += 1;
            }
        }
    }
    let mut left = multidegree.to_vec();
    let mut out = Vec::new();
    go(&mut left, &mut Vec::new(), multidegree.iter().sum(), &mut out);
    out
}

/// Every monomial of the given multidegree, in canonical order.
pub fn enumerate_monomials(multidegree: &[usize]) -> Result<Vec<FreeMonomial>> {
    let n: usize = multidegree.iter().sum();
    if n == 0 {
        return Err(Error::Multidegree("total degree must be positive".into()));
    }
    if n > MAX_FREE_DEGREE {
        return Err(Error::Budget(format!("total degree {n} exceeds {MAX_FREE_DEGREE}")));
    }
    let labelings = arrangements(multidegree);
    let mut out: Vec<Term> = shapes(n)
        .iter()
        .flat_map(|s| labelings.iter().map(move |l| s.relabeled(l)))
        .collect();
    out.sort();
    Ok(out)
}

/// An element of one multidegree component of the free magma algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    pub multidegree: Vec<usize>,
    pub terms: BTreeMap<FreeMonomial, BigRational>,
}

impl FreeElement {
    pub fn zero(multidegree: Vec<usize>) -> Self {
        FreeElement { multidegree, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: &BigRational, t: &FreeMonomial) -> Result<()> {
        if t.multidegree(self.multidegree.len()) != self.multidegree || t.leaves().iter().any(|&v| v >= self.multidegree.len()) {
            return Err(Error::Multidegree(format!("monomial outside component {:?}", self.multidegree)));
        }
        let entry = self.terms.entry(t.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(t);
        }
        Ok(())
    }

    pub fn scaled(&self, c: &BigRational) -> FreeElement {
        let mut out = FreeElement::zero(self.multidegree.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        }
        out
    }

    pub fn add(&self, other: &FreeElement) -> Result<FreeElement> {
        if self.multidegree != other.multidegree {
            return Err(Error::Multidegree(format!("{:?} vs {:?}", self.multidegree, other.multidegree)));
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(c, t)?;
        }
        Ok(out)
    }

    /// Coordinates over an enumerated basis of the component.
    pub fn to_vector(&self, basis: &[FreeMonomial]) -> Result<Vector<Rationals>> {
        let mut v = Vector::zeros(&Rationals, basis.len());
        for (t, c) in &self.terms {
            let i = basis
                .binary_search(t)
                .map_err(|_| Error::Multidegree("monomial missing from the basis".into()))?;
            v.set(i, c.clone());
        }
        Ok(v)
    }

    pub fn from_vector(multidegree: Vec<usize>, basis: &[FreeMonomial], v: &Vector<Rationals>) -> FreeElement {
        FreeElement { multidegree, terms: v.support().map(|(i, c)| (basis[i].clone(), c.clone())).collect() }
    }

    /// Serializable `(coefficient, monomial)` listing.
    pub fn listing(&self, names: &[String]) -> Vec<MonomialEntry> {
        self.terms
            .iter()
            .map(|(t, c)| MonomialEntry { coeff: format_rational(c), monomial: t.render(names) })
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if mag != BigRational::from_integer(1.into()) {
                s.push_str(&format_rational(&mag));
                s.push('·');
            }
            let body = t.render(names);
            if matches!(t, Term::Mul(..)) && mag != BigRational::from_integer(1.into()) {
                s.push_str(&format!("({body})"));
            } else {
                s.push_str(&body);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEntry {
    pub coeff: String,
    pub monomial: String,
}

/// `LHS − RHS` of an identity in the free magma algebra. The Jacobian macro
/// is expanded into brackets only when `expand_jacobian` is set; otherwise
/// identities using it are rejected.
pub fn expand_identity_free(id: &IdentityDef, expand_jacobian: bool) -> Result<FreeElement> {
    if id.uses_jacobian() && !expand_jacobian {
        return Err(Error::Macro(format!("{} uses the right Jacobian", id.name)));
    }
    let md = id.multidegree()?;
    let mut out = FreeElement::zero(md);
    for (t, c) in id.expanded() {
        out.add_term(&c, &t)?;
    }
    Ok(out)
}
