use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identity::{lookup, IdentityDef};
use crate::prover::consequence::{consequence_space, ConsequenceSpace, Relation};
use crate::prover::free::{expand_identity_free, FreeElement, MonomialEntry};
use crate::prover::{ProofReport, ProofStep};
use crate::scalar::format_rational;

/// Outcome of comparing two identities modulo a consequence space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `fA ≡ c·fB` with `c ≠ 0`.
    Equivalent(BigRational),
    /// Both lie in the consequence space.
    BothTrivial,
    /// Reduced forms are not proportional; the residue is `fA − c·fB` for
    /// the best candidate `c`, or the non-trivial side's reduced form.
    NotCongruent(FreeElement),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }
}

/// One congruence computation, ready for reporting.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub left: IdentityDef,
    pub right: IdentityDef,
    pub space: ConsequenceSpace,
    pub reduced_left: FreeElement,
    pub reduced_right: FreeElement,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceRecord {
    pub left: String,
    pub right: String,
    pub relations: Vec<Relation>,
    pub multidegree: Vec<usize>,
    pub monomial_dim: usize,
    pub consequence_dim: usize,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    pub reduced_left: Vec<MonomialEntry>,
    pub reduced_right: Vec<MonomialEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub residue: Vec<MonomialEntry>,
}

impl Congruence {
    pub fn record(&self) -> CongruenceRecord {
        let names = &self.left.variables;
        let (verdict, scalar, residue) = match &self.verdict {
            Verdict::Equivalent(c) => ("equivalent", Some(format_rational(c)), vec![]),
            Verdict::BothTrivial => ("both-trivial", None, vec![]),
            Verdict::NotCongruent(r) => ("not-congruent", None, r.listing(names)),
        };
        CongruenceRecord {
            left: self.left.name.clone(),
            right: self.right.name.clone(),
            relations: self.space.relations.clone(),
            multidegree: self.space.multidegree.clone(),
            monomial_dim: self.space.monomial_dim(),
            consequence_dim: self.space.dim(),
            verdict: verdict.into(),
            scalar,
            reduced_left: self.reduced_left.listing(names),
            reduced_right: self.reduced_right.listing(names),
            residue,
        }
    }
}

/// Decides whether `a ≡ c·b` modulo the consequence space of `relations`
/// in the identities' common multidegree.
pub fn prove_congruent(a: &IdentityDef, b: &IdentityDef, relations: &[Relation]) -> Result<Congruence> {
    let fa = expand_identity_free(a, true)?;
    let fb = expand_identity_free(b, true)?;
    if fa.multidegree != fb.multidegree || a.variables.len() != b.variables.len() {
        return Err(Error::Multidegree(format!(
            "{} has {:?}, {} has {:?}",
            a.name, fa.multidegree, b.name, fb.multidegree
        )));
    }
    let space = consequence_space(relations, &fa.multidegree)?;
    let md = fa.multidegree.clone();
    let ra = space.space.reduce(&fa.to_vector(&space.basis)?);
    let rb = space.space.reduce(&fb.to_vector(&space.basis)?);
    let verdict = match (ra.is_zero(), rb.is_zero()) {
        (true, true) => Verdict::BothTrivial,
        (false, true) => Verdict::NotCongruent(FreeElement::from_vector(md.clone(), &space.basis, &ra)),
        (true, false) => Verdict::NotCongruent(FreeElement::from_vector(md.clone(), &space.basis, &rb)),
        (false, false) => {
            let i = rb.first_nonzero().expect("nonzero");
            let c = ra.get(i) / rb.get(i);
            let mut residue = ra.clone();
            residue.axpy(&-c.clone(), &rb);
            if residue.is_zero() && !c.is_zero() {
                Verdict::Equivalent(c)
            } else {
                Verdict::NotCongruent(FreeElement::from_vector(md.clone(), &space.basis, &residue))
            }
        }
    };
    Ok(Congruence {
        left: a.clone(),
        right: b.clone(),
        reduced_left: FreeElement::from_vector(md.clone(), &space.basis, &ra),
        reduced_right: FreeElement::from_vector(md, &space.basis, &rb),
        space,
        verdict,
    })
}

const ANGLE: [&str; 3] = ["angle-identity-1", "angle-identity-2", "angle-identity-3"];

fn congruence_report(target: &str, pairs: &[(&str, &str)], relations: &[Relation], notes: Vec<String>) -> Result<ProofReport> {
    let mut steps = Vec::new();
    for (a, b) in pairs {
        let c = prove_congruent(&lookup(a)?, &lookup(b)?, relations)?;
        steps.push(ProofStep::Congruence(c.record()));
    }
    let succeeded = steps.iter().all(|s| match s {
        ProofStep::Congruence(r) => r.verdict == "equivalent",
        ProofStep::Expansion(_) => true,
    });
    Ok(ProofReport { target: target.into(), succeeded, steps, notes })
}

/// Each angle identity against its right-Jacobian form, modulo
/// right-anticommutativity.
pub fn prove_angle_jacobian() -> Result<ProofReport> {
    let pairs: Vec<(&str, &str)> =
        ANGLE.iter().copied().zip(["jacobian-form-1", "jacobian-form-2", "jacobian-form-3"]).collect();
    congruence_report(
        "angle-jacobian",
        &pairs,
        &[Relation::RightAnticommutativity],
        vec!["equivalence is proven as proportionality modulo the consequence space of the relations".into()],
    )
}

/// Each angle identity against the Malcev identity, modulo anticommutativity.
pub fn prove_malcev_equiv() -> Result<ProofReport> {
    let pairs: Vec<(&str, &str)> = ANGLE.iter().map(|a| (*a, "malcev-identity")).collect();
    congruence_report(
        "malcev-equiv",
        &pairs,
        &[Relation::Anticommutativity],
        vec![
            "equivalence is proven as proportionality modulo the consequence space of the relations".into(),
            "angle algebras of alternative Z2-algebras: verified on instances, not symbolically".into(),
        ],
    )
}
