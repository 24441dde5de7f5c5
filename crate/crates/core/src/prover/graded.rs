use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::identity::{eval_identity, lookup, Magma};
use crate::prover::free::MonomialEntry;
use crate::prover::{ExpansionRecord, ProofReport, ProofStep};
use crate::scalar::format_rational;

/// A letter `v₀` or `v₁` of the free associative Z₂-algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub var: usize,
    pub odd: bool,
}

/// A word in the letters; words with two or more odd letters are zero.
pub type GradedWord = Vec<Letter>;

/// Linear combination of graded words.
pub type WordCombination = BTreeMap<GradedWord, BigRational>;

fn odd_count(w: &GradedWord) -> usize {
    w.iter().filter(|l| l.odd).count()
}

fn add_into(acc: &mut WordCombination, c: &BigRational, w: GradedWord) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// Bilinear concatenation, dropping words with two or more odd letters.
pub fn graded_word_multiply(u: &WordCombination, v: &WordCombination) -> WordCombination {
    let mut out = WordCombination::new();
    for (a, ca) in u {
        for (b, cb) in v {
            if odd_count(a) + odd_count(b) >= 2 {
                continue;
            }
            let w: GradedWord = a.iter().chain(b).copied().collect();
            add_into(&mut out, &(ca * cb), w);
        }
    }
    out
}

/// Words with no odd letters.
pub fn even_projection(u: &WordCombination) -> WordCombination {
    u.iter().filter(|(w, _)| odd_count(w) == 0).map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// `v₀ + v₁`
pub fn generic_element(var: usize) -> WordCombination {
    [false, true].iter().map(|&odd| (vec![Letter { var, odd }], BigRational::one())).collect()
}

pub fn render_word(w: &GradedWord, names: &[String]) -> String {
    w.iter()
        .map(|l| format!("{}{}", names.get(l.var).cloned().unwrap_or_else(|| format!("v{}", l.var)), if l.odd { "₁" } else { "₀" }))
        .collect()
}

/// How the derived product is formed from the associative one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BulletRule {
    pub coefficient: BigRational,
    /// `c(u·v₀ + v₀·u)` when set, `c·u·v₀` otherwise.
    pub symmetric: bool,
}

impl BulletRule {
    /// `x • y = ½(xy₀ + y₀x)`
    pub fn standard() -> Self {
        BulletRule { coefficient: BigRational::new(1.into(), 2.into()), symmetric: true }
    }
}

/// The free associative Z₂-algebra under a bullet rule.
struct FreeBullet<'a> {
    rule: &'a BulletRule,
}

impl Magma for FreeBullet<'_> {
    type Elem = WordCombination;

    fn zero(&self) -> WordCombination {
        WordCombination::new()
    }

    fn mul(&self, u: &WordCombination, v: &WordCombination) -> WordCombination {
        let v0 = even_projection(v);
        let mut out = WordCombination::new();
        for (w, c) in graded_word_multiply(u, &v0) {
            add_into(&mut out, &(c * &self.rule.coefficient), w);
        }
        if self.rule.symmetric {
            for (w, c) in graded_word_multiply(&v0, u) {
                add_into(&mut out, &(c * &self.rule.coefficient), w);
            }
        }
        out
    }

    fn sub(&self, a: &WordCombination, b: &WordCombination) -> WordCombination {
        let mut out = a.clone();
        for (w, c) in b {
            add_into(&mut out, &-c.clone(), w.clone());
        }
        out
    }

    fn add_scaled(&self, acc: &mut WordCombination, c: &BigRational, a: &WordCombination) -> Result<()> {
        for (w, x) in a {
            add_into(acc, &(c * x), w.clone());
        }
        Ok(())
    }
}

/// Expands the generalized Jordan identities in the free associative
/// Z₂-algebra, each variable `v` substituted by `v₀ + v₁`.
pub fn prove_bullet_identities_with(rule: &BulletRule) -> Result<ProofReport> {
    let magma = FreeBullet { rule };
    let mut steps = Vec::new();
    for name in ["right-commutativity", "jordan-identity", "bullet-identity"] {
        let id = lookup(name)?;
        let assignment: Vec<WordCombination> = (0..id.variables.len()).map(generic_element).collect();
        let residue = eval_identity(&magma, &id, &assignment)?;
        let max_len = residue.keys().map(|w| w.len()).max().unwrap_or(0);
        steps.push(ProofStep::Expansion(ExpansionRecord {
            identity: name.into(),
            word_length: max_len.max(id.multidegree()?.iter().sum()),
            residue: residue
                .iter()
                .map(|(w, c)| MonomialEntry { coeff: format_rational(c), monomial: render_word(w, &id.variables) })
                .collect(),
        }));
    }
    let succeeded = steps.iter().all(|s| matches!(s, ProofStep::Expansion(e) if e.residue.is_empty()));
    Ok(ProofReport {
        target: "bullet-identities".into(),
        succeeded,
        steps,
        notes: vec![format!(
            "bullet rule: {}{}",
            format_rational(&rule.coefficient),
            if rule.symmetric { "(x·y0 + y0·x)" } else { "·x·y0" }
        )],
    })
}

pub fn prove_bullet_identities() -> Result<ProofReport> {
    prove_bullet_identities_with(&BulletRule::standard())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(letters: &[(usize, bool)]) -> GradedWord {
        letters.iter().map(|&(var, odd)| Letter { var, odd }).collect()
    }

    fn single(letters: &[(usize, bool)]) -> WordCombination {
        [(word(letters), BigRational::one())].into_iter().collect()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(graded_word_multiply(&single(&[(0, false)]), &single(&[(1, false)])), single(&[(0, false), (1, false)]));
        assert!(graded_word_multiply(&single(&[(0, true)]), &single(&[(1, true)])).is_empty());
        assert_eq!(graded_word_multiply(&generic_element(0), &single(&[(1, true)])), single(&[(0, false), (1, true)]));
    }

    #[test]
    fn standard_rule_gives_zero_residues() {
        let r = prove_bullet_identities().unwrap();
        assert!(r.succeeded);
        assert_eq!(r.steps.len(), 3);
    }

    #[test]
    fn one_sided_rule_is_caught() {
        let r = prove_bullet_identities_with(&BulletRule { coefficient: BigRational::one(), symmetric: false }).unwrap();
        assert!(!r.succeeded);
    }

    fn combination() -> impl Strategy<Value = WordCombination> {
        prop::collection::vec((prop::collection::vec((0usize..3, any::<bool>()), 0..3), -3i64..4), 0..4).prop_map(|ts| {
            let mut out = WordCombination::new();
            for (w, c) in ts {
                add_into(&mut out, &BigRational::from_integer(c.into()), word(&w));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in combination(), b in combination(), c in combination()) {
            let left = graded_word_multiply(&graded_word_multiply(&a, &b), &c);
            let right = graded_word_multiply(&a, &graded_word_multiply(&b, &c));
            prop_assert_eq!(left, right);
        }
    }
}
