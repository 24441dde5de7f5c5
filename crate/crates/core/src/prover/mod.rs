//! Symbolic proofs: free graded associative expansions and congruence of
//! identities modulo relation consequences in the free magma algebra.

mod congruence;
mod consequence;
mod free;
mod graded;

use serde::{Deserialize, Serialize};

pub use congruence::{prove_congruent, prove_malcev_equiv, prove_angle_jacobian, Congruence, CongruenceRecord, Verdict};
pub use consequence::{consequence_space, ConsequenceSpace, Relation};
pub use free::{enumerate_monomials, expand_identity_free, FreeElement, FreeMonomial, MonomialEntry, MAX_FREE_DEGREE};
pub use graded::{
    even_projection, generic_element, graded_word_multiply, prove_bullet_identities, prove_bullet_identities_with, BulletRule, GradedWord,
    Letter, WordCombination,
};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub identity: String,
    pub word_length: usize,
    pub residue: Vec<MonomialEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProofStep {
    Expansion(ExpansionRecord),
    Congruence(CongruenceRecord),
}

/// Result of a proof run, in text or JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub target: String,
    pub succeeded: bool,
    pub steps: Vec<ProofStep>,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn listing(entries: &[MonomialEntry]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    entries.iter().map(|e| format!("{}·{}", e.coeff, e.monomial)).collect::<Vec<_>>().join(" + ")
}

impl ProofReport {
    pub fn render(&self) -> String {
        let mut s = format!("{}: {}\n", self.target, if self.succeeded { "proved" } else { "FAILED" });
        for step in &self.steps {
            match step {
                ProofStep::Expansion(e) => {
                    s += &format!("  {} (words up to length {}): residue {}\n", e.identity, e.word_length, listing(&e.residue));
                }
                ProofStep::Congruence(c) => {
                    s += &format!(
                        "  {} vs {} mod {:?} in multidegree {:?}: monomials {}, consequences {}, {}",
                        c.left,
                        c.right,
                        c.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        c.multidegree,
                        c.monomial_dim,
                        c.consequence_dim,
                        c.verdict
                    );
                    if let Some(sc) = &c.scalar {
                        s += &format!(" with scalar {sc}");
                    }
                    if !c.residue.is_empty() {
                        s += &format!("; residue {}", listing(&c.residue));
                    }
                    s.push('\n');
                }
            }
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        s
    }
}

/// Named proof targets.
pub fn prove(target: &str) -> Result<ProofReport> {
    match target {
        "bullet-identities" => prove_bullet_identities(),
        "angle-jacobian" => prove_angle_jacobian(),
        "malcev-equiv" => prove_malcev_equiv(),
        other => Err(Error::Schema(format!("unknown proof target {other:?}; expected bullet-identities, angle-jacobian or malcev-equiv"))),
    }
}

pub const PROOF_TARGETS: [&str; 3] = ["bullet-identities", "angle-jacobian", "malcev-equiv"];
