use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::identity::{check_identity, lookup, CheckOptions, CheckReport};
use crate::scalar::Field;

/// A class of algebras defined by a suite of catalog identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    GeneralizedJordan,
    GeneralizedMalcev,
    Jordan,
    Malcev,
    Lie,
    Leibniz,
    Associative,
    Alternative,
    Commutative,
    Anticommutative,
}

impl Class {
    pub const ALL: [Class; 10] = [
        Class::GeneralizedJordan,
        Class::GeneralizedMalcev,
        Class::Jordan,
        Class::Malcev,
        Class::Lie,
        Class::Leibniz,
        Class::Associative,
        Class::Alternative,
        Class::Commutative,
        Class::Anticommutative,
    ];

    /// Catalog names of the defining identities.
    pub fn identities(self) -> &'static [&'static str] {
        match self {
            Class::GeneralizedJordan => &["right-commutativity", "jordan-identity", "bullet-identity"],
            Class::GeneralizedMalcev => {
                &["right-anticommutativity", "angle-identity-1", "angle-identity-2", "angle-identity-3"]
            }
            Class::Jordan => &["commutativity", "jordan-identity"],
            Class::Malcev => &["anticommutativity", "malcev-identity"],
            Class::Lie => &["anticommutativity", "jacobi"],
            Class::Leibniz => &["right-leibniz"],
            Class::Associative => &["associativity"],
            Class::Alternative => &["left-alternative", "right-alternative"],
            Class::Commutative => &["commutativity"],
            Class::Anticommutative => &["anticommutativity"],
        }
    }

    /// Short suite name used on the command line.
    pub fn suite_name(self) -> &'static str {
        match self {
            Class::GeneralizedJordan => "gjordan",
            Class::GeneralizedMalcev => "gmalcev",
            Class::Jordan => "jordan",
            Class::Malcev => "malcev",
            Class::Lie => "lie",
            Class::Leibniz => "leibniz",
            Class::Associative => "assoc",
            Class::Alternative => "alt",
            Class::Commutative => "comm",
            Class::Anticommutative => "anticomm",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Class::GeneralizedJordan => "generalized Jordan",
            Class::GeneralizedMalcev => "generalized Malcev",
            Class::Jordan => "Jordan",
            Class::Malcev => "Malcev",
            Class::Lie => "Lie",
            Class::Leibniz => "Leibniz",
            Class::Associative => "associative",
            Class::Alternative => "alternative",
            Class::Commutative => "commutative",
            Class::Anticommutative => "anticommutative",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suite_name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = match s {
            "gjordan" | "generalized-jordan" => Class::GeneralizedJordan,
            "gmalcev" | "generalized-malcev" => Class::GeneralizedMalcev,
            "jordan" => Class::Jordan,
            "malcev" => Class::Malcev,
            "lie" => Class::Lie,
            "leibniz" => Class::Leibniz,
            "assoc" | "associative" => Class::Associative,
            "alt" | "alternative" => Class::Alternative,
            "comm" | "commutative" => Class::Commutative,
            "anticomm" | "anticommutative" => Class::Anticommutative,
            other => return Err(Error::Schema(format!("unknown suite {other:?}"))),
        };
        Ok(c)
    }
}

/// Per-identity reports for one class.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport<K: Field> {
    pub class: Class,
    pub reports: Vec<CheckReport<K>>,
}

impl<K: Field> SuiteReport<K> {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(|r| r.holds())
    }

    pub fn first_failure(&self) -> Option<&CheckReport<K>> {
        self.reports.iter().find(|r| !r.holds())
    }
}

pub fn check_suite<K: Field>(alg: &Algebra<K>, class: Class, opts: &CheckOptions) -> Result<SuiteReport<K>> {
    let reports = class
        .identities()
        .iter()
        .map(|name| check_identity(alg, &lookup(name)?, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { class, reports })
}

/// Checks every class; each verdict is independent of the others.
pub fn classify<K: Field>(alg: &Algebra<K>, opts: &CheckOptions) -> Result<Vec<SuiteReport<K>>> {
    Class::ALL.iter().map(|&c| check_suite(alg, c, opts)).collect()
}
