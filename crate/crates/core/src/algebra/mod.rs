//! Finite-dimensional algebras given by structure constants, with optional
//! Z₂-grading, and the constructions built on them.

mod derive;
mod format;
mod ideal;
mod module;
mod simple;
mod special;
mod units;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use derive::{derive_angle, derive_bullet, right_jacobian};
pub use format::{AlgebraDoc, AnyAlgebra, FieldDoc, ProductDoc};
pub use ideal::{
    annihilator, annihilator_jordan, annihilator_malcev, ideal_closure, is_ideal, quotient_algebra, AnnihilatorKind,
    IdealWitness, Quotient, Side,
};
pub use module::{
    module_action_from_annihilator, split_null_extension, ActionSign, ModuleAction, ModuleConstruction,
    WellDefinednessFinding,
};
pub use simple::{is_simple, SimplicityOptions, SimplicityVerdict, DEFAULT_MAX_ENUM};
pub use special::{verify_special_witness, WitnessCheck};
pub use units::find_right_units;

use crate::error::{Error, Result};
use crate::identity::Magma;
use crate::linalg::Vector;
use crate::scalar::{Field, Scalar};

/// A Z₂-grading `A = A₀ ⊕ A₁` by basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grading {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl Grading {
    pub fn new(mut even: Vec<usize>, mut odd: Vec<usize>) -> Self {
        even.sort_unstable();
        odd.sort_unstable();
        Grading { even, odd }
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.odd.binary_search(&i).is_ok()
    }

    pub fn is_even(&self, i: usize) -> bool {
        self.even.binary_search(&i).is_ok()
    }

    fn check_partition(&self, dim: usize) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &i in self.even.iter().chain(&self.odd) {
            if i >= dim {
                return Err(Error::Grading(format!("index {i} out of range for dimension {dim}")));
            }
            if !seen.insert(i) {
                return Err(Error::Grading(format!("index {i} is listed twice")));
            }
        }
        if seen.len() != dim {
            let missing: Vec<usize> = (0..dim).filter(|i| !seen.contains(i)).collect();
            return Err(Error::Grading(format!("indices {missing:?} are neither even nor odd")));
        }
        Ok(())
    }
}

/// Where a derived algebra came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub construction: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// An algebra over `K` with a dense structure-constant table.
#[derive(Clone, Debug)]
pub struct Algebra<K: Field> {
    name: String,
    field: K,
    basis: Vec<String>,
    table: Vec<Vector<K>>,
    sparse: Vec<Vec<(usize, K::Elem)>>,
    grading: Option<Grading>,
    unit: Option<Vector<K>>,
    provenance: Option<Provenance>,
    flags: Vec<String>,
}

impl<K: Field> PartialEq for Algebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.field == other.field
            && self.basis == other.basis
            && self.table == other.table
            && self.grading == other.grading
            && self.unit == other.unit
            && self.provenance == other.provenance
            && self.flags == other.flags
    }
}

impl<K: Field> Algebra<K> {
    /// `table[i][j]` is the product `e_i · e_j`.
    pub fn new(name: impl Into<String>, field: &K, basis: Vec<String>, table: Vec<Vec<Vector<K>>>) -> Result<Self> {
        let dim = basis.len();
        if table.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: table.len() });
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for row in table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            for v in row {
                v.check_len(dim)?;
                flat.push(v);
            }
        }
        Ok(Self::from_flat(name.into(), field, basis, flat))
    }

    /// Builds the table from a function of basis index pairs.
    pub fn from_fn(
        name: impl Into<String>,
        field: &K,
        basis: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vector<K>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut flat = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                v.check_len(dim)?;
                flat.push(v);
            }
        }
        Ok(Self::from_flat(name.into(), field, basis, flat))
    }

    fn from_flat(name: String, field: &K, basis: Vec<String>, table: Vec<Vector<K>>) -> Self {
        let sparse = table.iter().map(|v| v.support().map(|(k, c)| (k, c.clone())).collect()).collect();
        Algebra {
            name,
            field: field.clone(),
            basis,
            table,
            sparse,
            grading: None,
            unit: None,
            provenance: None,
            flags: Vec::new(),
        }
    }

    /// Attaches a grading after checking the three containments
    /// `A₀A₀ ⊆ A₀`, `A₀A₁ + A₁A₀ ⊆ A₁`, `A₁A₁ = 0`.
    pub fn with_grading(mut self, grading: Grading) -> Result<Self> {
        grading.check_partition(self.dim())?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let target_odd = match (grading.is_odd(i), grading.is_odd(j)) {
                    (true, true) => None,
                    (false, false) => Some(false),
                    _ => Some(true),
                };
                for (k, c) in self.product(i, j).support() {
                    let ok = match target_odd {
                        None => false,
                        Some(odd) => grading.is_odd(k) == odd,
                    };
                    if !ok {
                        let rule = match target_odd {
                            None => "A₁A₁ = 0",
                            Some(false) => "A₀A₀ ⊆ A₀",
                            Some(true) => "A₀A₁ + A₁A₀ ⊆ A₁",
                        };
                        let component = if grading.is_odd(k) { "A₁" } else { "A₀" };
                        return Err(Error::Grading(format!(
                            "{}·{} has coefficient {c} on {} in {component}, violating {rule}",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    /// Declares a two-sided unit after checking it on every basis element.
    pub fn with_unit(mut self, unit: Vector<K>) -> Result<Self> {
        unit.check_len(self.dim())?;
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if self.mul(&unit, &e) != e || self.mul(&e, &unit) != e {
                return Err(Error::Unit(format!("{} is not fixed by the declared unit", self.basis[i])));
            }
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Declared class flags; they are re-verified whenever a file is loaded.
    pub fn with_flags(mut self, flags: Vec<String>) -> Self {
        self.flags = flags;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn without_grading(mut self) -> Self {
        self.grading = None;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn unit(&self) -> Option<&Vector<K>> {
        self.unit.as_ref()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    /// `e_i · e_j`
    pub fn product(&self, i: usize, j: usize) -> &Vector<K> {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero coordinates of `e_i · e_j`.
    pub fn product_support(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector<K> {
        Vector::unit(&self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector<K> {
        Vector::zeros(&self.field, self.dim())
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, u: &Vector<K>, v: &Vector<K>) -> Result<Vector<K>> {
        u.check_len(self.dim())?;
        v.check_len(self.dim())?;
        Ok(self.mul(u, v))
    }

    /// [`Algebra::multiply`] for vectors already known to have the right length.
    pub fn mul(&self, u: &Vector<K>, v: &Vector<K>) -> Vector<K> {
        let n = self.dim();
        let mut acc = vec![self.field.zero(); n];
        for (i, ui) in u.support() {
            for (j, vj) in v.support() {
                let c = ui.clone() * vj.clone();
                for (k, t) in &self.sparse[i * n + j] {
                    acc[*k].add_product(&c, t);
                }
            }
        }
        Vector::from_entries(&self.field, acc)
    }

    /// Zeroes the odd coordinates: the `y₀` of `y = y₀ + y₁`.
    pub fn even_part(&self, v: &Vector<K>) -> Result<Vector<K>> {
        let g = self.grading.as_ref().ok_or_else(|| Error::Ungraded(self.name.clone()))?;
        v.check_len(self.dim())?;
        let mut out = v.clone();
        for &i in &g.odd {
            out.set(i, self.field.zero());
        }
        Ok(out)
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.sparse.iter().all(|s| s.is_empty())
    }

    /// Renders `v` as a combination of basis names.
    pub fn format_vector(&self, v: &Vector<K>) -> String {
        let mut s = String::new();
        for (i, c) in v.support() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push('·');
            }
            s.push_str(&self.basis[i]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Block-diagonal sum; cross products vanish. Gradings are merged when both
/// summands are graded, and units add.
pub fn direct_sum<K: Field>(a: &Algebra<K>, b: &Algebra<K>) -> Result<Algebra<K>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.descriptor().to_string(), b.field.descriptor().to_string()));
    }
    let (n, m) = (a.dim(), b.dim());
    let names: Vec<String> = a
        .basis
        .iter()
        .map(|s| format!("{s}.1"))
        .chain(b.basis.iter().map(|s| format!("{s}.2")))
        .collect();
    let field = a.field.clone();
    let embed = |v: &Vector<K>, offset: usize| {
        let mut out = Vector::zeros(&field, n + m);
        for (k, c) in v.support() {
            out.set(k + offset, c.clone());
        }
        out
    };
    let mut sum = Algebra::from_fn(format!("{}+{}", a.name, b.name), &field, names, |i, j| {
        if i < n && j < n {
            embed(a.product(i, j), 0)
        } else if i >= n && j >= n {
            embed(b.product(i - n, j - n), n)
        } else {
            Vector::zeros(&field, n + m)
        }
    })?;
    if let (Some(ga), Some(gb)) = (&a.grading, &b.grading) {
        let even = ga.even.iter().copied().chain(gb.even.iter().map(|i| i + n)).collect();
        let odd = ga.odd.iter().copied().chain(gb.odd.iter().map(|i| i + n)).collect();
        sum = sum.with_grading(Grading::new(even, odd))?;
    }
    if let (Some(ua), Some(ub)) = (&a.unit, &b.unit) {
        let u = &embed(ua, 0) + &embed(ub, n);
        sum = sum.with_unit(u)?;
    }
    Ok(sum)
}

impl<K: Field> Magma for Algebra<K> {
    type Elem = Vector<K>;

    fn zero(&self) -> Vector<K> {
        self.zero_vector()
    }

    fn mul(&self, a: &Vector<K>, b: &Vector<K>) -> Vector<K> {
        Algebra::mul(self, a, b)
    }

    fn sub(&self, a: &Vector<K>, b: &Vector<K>) -> Vector<K> {
        a - b
    }

    fn add_scaled(&self, acc: &mut Vector<K>, c: &BigRational, a: &Vector<K>) -> Result<()> {
        let c = self.field.from_rational(c)?;
        acc.axpy(&c, a);
        Ok(())
    }
}

impl<K: Field> fmt::Display for Algebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} (dim {})", self.name, self.field.descriptor(), self.dim())?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.product_support(i, j).is_empty() {
                    writeln!(f, "  {}·{} = {}", self.basis[i], self.basis[j], self.format_vector(self.product(i, j)))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::scalar::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn triangular_products() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let (e11, e22, e12) = (t.basis_vector(0), t.basis_vector(1), t.basis_vector(2));
        // E_ab · E_cd = δ_bc E_ad
        assert!(t.multiply(&e12, &e11).unwrap().is_zero());
        assert_eq!(t.multiply(&e11, &e12).unwrap(), e12);
        assert_eq!(t.multiply(&e12, &e22).unwrap(), e12);
        let one = t.unit().unwrap().clone();
        for i in 0..3 {
            let e = t.basis_vector(i);
            assert_eq!(t.multiply(&one, &e).unwrap(), e);
        }
        assert!(t.multiply(&e11, &Vector::zeros(&Rationals, 2)).is_err());
    }

    #[test]
    fn even_part_projection() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let e11 = t.basis_vector(0);
        let e12 = t.basis_vector(2);
        assert_eq!(t.even_part(&e11).unwrap(), e11);
        assert!(t.even_part(&e12).unwrap().is_zero());
        assert_eq!(t.even_part(&(&e11 + &e12)).unwrap(), e11);
        let o = gallery::octonions(&Rationals).unwrap();
        assert!(matches!(o.even_part(&o.basis_vector(0)), Err(Error::Ungraded(_))));
    }

    #[test]
    fn grading_rejects_odd_square() {
        let k = Rationals;
        let names = vec!["a".to_string(), "b".to_string()];
        let alg = Algebra::from_fn("bad", &k, names, |i, j| {
            if i == 1 && j == 1 {
                Vector::unit(&k, 2, 0)
            } else {
                Vector::zeros(&k, 2)
            }
        })
        .unwrap();
        let err = alg.with_grading(Grading::new(vec![0], vec![1])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("b·b") && msg.contains("A₁A₁ = 0"), "{msg}");
    }

    #[test]
    fn grading_rejects_bad_partition() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap().without_grading();
        assert!(t.clone().with_grading(Grading::new(vec![0, 1], vec![])).is_err());
        assert!(t.clone().with_grading(Grading::new(vec![0, 1, 2], vec![2])).is_err());
        assert!(t.with_grading(Grading::new(vec![0, 1], vec![2])).is_ok());
    }

    #[test]
    fn unit_is_checked() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        assert!(matches!(t.with_unit(Vector::from_i64s(&Rationals, &[1, 0, 0])), Err(Error::Unit(_))));
    }

    #[test]
    fn direct_sum_shape() {
        let t = gallery::block_triangular(&Rationals, 1, 1).unwrap();
        let s = direct_sum(&t, &t).unwrap();
        assert_eq!(s.dim(), 6);
        for i in 0..3 {
            for j in 3..6 {
                assert!(s.product(i, j).is_zero() && s.product(j, i).is_zero());
            }
        }
        assert_eq!(s.grading().unwrap().odd, vec![2, 5]);
        let f5 = gallery::block_triangular(&PrimeField::new(5).unwrap(), 1, 1).unwrap();
        let f7 = gallery::block_triangular(&PrimeField::new(7).unwrap(), 1, 1).unwrap();
        assert!(matches!(direct_sum(&f5, &f7), Err(Error::FieldMismatch(..))));
    }

    proptest! {
        // Adding a nonzero odd·odd entry to a valid graded table must be rejected.
        #[test]
        fn odd_odd_perturbation_rejected(n1 in 1usize..3, n2 in 1usize..3, target in 0usize..9, coeff in 1i64..5) {
            let t = gallery::block_triangular(&Rationals, n1, n2).unwrap();
            let g = t.grading().unwrap().clone();
            let dim = t.dim();
            let target = target % dim;
            let a = g.odd[0];
            let b = g.odd[g.odd.len() - 1];
            let k = Rationals;
            let perturbed = Algebra::from_fn("p", &k, t.basis_names().to_vec(), |i, j| {
                let mut v = t.product(i, j).clone();
                if i == a && j == b {
                    v.set(target, k.from_i64(coeff));
                }
                v
            }).unwrap();
            prop_assert!(t.clone().without_grading().with_grading(g.clone()).is_ok());
            prop_assert!(matches!(perturbed.with_grading(g), Err(Error::Grading(_))));
        }
    }
}
