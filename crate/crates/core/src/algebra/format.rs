use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Grading, Provenance};
use crate::error::{Error, Result};
use crate::identity::{check_suite, CheckOptions, Class};
use crate::linalg::Vector;
use crate::scalar::{Field, FieldDescriptor, PrimeField, Rationals};

/// On-disk algebra document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub field: FieldDoc,
    pub dim: usize,
    pub basis: Vec<String>,
    pub products: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<BTreeMap<usize, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

impl FieldDoc {
    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        match *self {
            FieldDoc::Q => Ok(FieldDescriptor::Rationals),
            FieldDoc::Fp { p } => FieldDescriptor::prime(p),
        }
    }

    pub fn from_descriptor(d: FieldDescriptor) -> Self {
        match d {
            FieldDescriptor::Rationals => FieldDoc::Q,
            FieldDescriptor::PrimeField(p) => FieldDoc::Fp { p },
        }
    }
}

/// One nonzero entry `e_i · e_j` of the table; keys of `coeffs` are basis
/// indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

fn vector_from_map<K: Field>(field: &K, dim: usize, coeffs: &BTreeMap<usize, String>, what: &str) -> Result<Vector<K>> {
    let mut v = Vector::zeros(field, dim);
    for (&k, text) in coeffs {
        if k >= dim {
            return Err(Error::Schema(format!("{what}: basis index {k} out of range for dimension {dim}")));
        }
        v.set(k, field.parse(text)?);
    }
    Ok(v)
}

fn vector_to_map<K: Field>(v: &Vector<K>) -> BTreeMap<usize, String> {
    v.support().map(|(k, c)| (k, c.to_string())).collect()
}

impl AlgebraDoc {
    /// Builds the algebra over `field`, validating every invariant and
    /// re-verifying declared flags.
    pub fn build<K: Field>(&self, field: &K) -> Result<Algebra<K>> {
        if self.basis.len() != self.dim {
            return Err(Error::Schema(format!("dim is {} but {} basis names given", self.dim, self.basis.len())));
        }
        if self.dim == 0 {
            return Err(Error::Schema("dim must be positive".into()));
        }
        let n = self.dim;
        let mut table = vec![vec![Vector::zeros(field, n); n]; n];
        let mut seen = vec![false; n * n];
        for p in &self.products {
            if p.i >= n || p.j >= n {
                return Err(Error::Schema(format!("product ({}, {}) out of range", p.i, p.j)));
            }
            if std::mem::replace(&mut seen[p.i * n + p.j], true) {
                return Err(Error::Schema(format!("product ({}, {}) given twice", p.i, p.j)));
            }
            table[p.i][p.j] = vector_from_map(field, n, &p.coeffs, &format!("product ({}, {})", p.i, p.j))?;
        }
        let mut alg = Algebra::new(self.name.clone(), field, self.basis.clone(), table)?;
        if let Some(g) = &self.grading {
            alg = alg.with_grading(Grading::new(g.even.clone(), g.odd.clone()))?;
        }
        if let Some(u) = &self.unit {
            alg = alg.with_unit(vector_from_map(field, n, u, "unit")?)?;
        }
        if let Some(p) = &self.provenance {
            alg = alg.with_provenance(p.clone());
        }
        verify_flags(&alg, &self.flags)?;
        Ok(alg.with_flags(self.flags.clone()))
    }

    pub fn from_algebra<K: Field>(alg: &Algebra<K>) -> Self {
        let n = alg.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = alg.product(i, j);
                if !v.is_zero() {
                    products.push(ProductDoc { i, j, coeffs: vector_to_map(v) });
                }
            }
        }
        AlgebraDoc {
            name: alg.name().to_string(),
            field: FieldDoc::from_descriptor(alg.field().descriptor()),
            dim: n,
            basis: alg.basis_names().to_vec(),
            products,
            grading: alg.grading().cloned(),
            unit: alg.unit().map(vector_to_map),
            provenance: alg.provenance().cloned(),
            flags: alg.flags().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra documents serialize")
    }
}

/// Flags name identity classes; each is checked exhaustively.
fn verify_flags<K: Field>(alg: &Algebra<K>, flags: &[String]) -> Result<()> {
    for flag in flags {
        let class: Class = flag
            .parse()
            .map_err(|_| Error::Schema(format!("unknown flag {flag:?}")))?;
        let report = check_suite(alg, class, &CheckOptions::default())?;
        if let Some(failed) = report.first_failure() {
            return Err(Error::FlagViolation {
                flag: flag.clone(),
                detail: failed.summary(alg),
            });
        }
    }
    Ok(())
}

/// An algebra loaded from a file, over whichever field the file declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Q(Algebra<Rationals>),
    Fp(Algebra<PrimeField>),
}

/// Runs `$body` with `$a` bound to the concrete algebra inside an [`AnyAlgebra`].
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::algebra::AnyAlgebra::Q($a) => $body,
            $crate::algebra::AnyAlgebra::Fp($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self> {
        match doc.field.descriptor()? {
            FieldDescriptor::Rationals => Ok(AnyAlgebra::Q(doc.build(&Rationals)?)),
            FieldDescriptor::PrimeField(p) => Ok(AnyAlgebra::Fp(doc.build(&PrimeField::new(p)?)?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        with_algebra!(self, a => AlgebraDoc::from_algebra(a))
    }

    pub fn name(&self) -> &str {
        with_algebra!(self, a => a.name())
    }

    pub fn dim(&self) -> usize {
        with_algebra!(self, a => a.dim())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        with_algebra!(self, a => a.field().descriptor())
    }

    /// Re-reads the table over another field. Rational coefficients are
    /// reduced modulo p; a denominator divisible by p is an error.
    pub fn over(&self, target: FieldDescriptor) -> Result<AnyAlgebra> {
        let mut doc = self.to_doc();
        doc.field = FieldDoc::from_descriptor(target);
        Self::from_doc(&doc)
    }
}

impl<K: Field> Algebra<K> {
    pub fn to_json(&self) -> String {
        AlgebraDoc::from_algebra(self).to_json()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn from_json(field: &K, text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        if doc.field.descriptor()? != field.descriptor() {
            return Err(Error::FieldMismatch(doc.field.descriptor()?.to_string(), field.descriptor().to_string()));
        }
        doc.build(field)
    }
}

impl From<Algebra<Rationals>> for AnyAlgebra {
    fn from(a: Algebra<Rationals>) -> Self {
        AnyAlgebra::Q(a)
    }
}

impl From<Algebra<PrimeField>> for AnyAlgebra {
    fn from(a: Algebra<PrimeField>) -> Self {
        AnyAlgebra::Fp(a)
    }
}
