use serde::{Deserialize, Serialize};

use crate::algebra::{annihilator, is_ideal, quotient_algebra, Algebra, AnnihilatorKind};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::Field;

/// Right action of a base algebra on a vector space: `right_action[b]` maps
/// `u` to `u·e_b`, with columns the images of the space basis.
#[derive(Clone, Debug)]
pub struct ModuleAction<K: Field> {
    pub base: Algebra<K>,
    pub space_dim: usize,
    pub right_action: Vec<Matrix<K>>,
}

impl<K: Field> ModuleAction<K> {
    pub fn zero(base: &Algebra<K>, space_dim: usize) -> Self {
        let k = base.field();
        ModuleAction {
            base: base.clone(),
            space_dim,
            right_action: (0..base.dim()).map(|_| Matrix::zeros(k, space_dim, space_dim)).collect(),
        }
    }

    /// `u·e_b`
    pub fn act(&self, u: &Vector<K>, b: usize) -> Result<Vector<K>> {
        self.right_action[b].mul_vec(u)
    }
}

/// Sign `ε` of the left action in `(x̄,u)(ȳ,v) = (x̄ȳ, u·ȳ + ε v·x̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionSign {
    /// `x̄u = u x̄`
    Symmetric,
    /// `x̄u = −u x̄`
    Antisymmetric,
}

impl ActionSign {
    pub fn for_kind(kind: AnnihilatorKind) -> Self {
        match kind {
            AnnihilatorKind::Jordan => ActionSign::Symmetric,
            AnnihilatorKind::Malcev => ActionSign::Antisymmetric,
        }
    }
}

/// The algebra on `base ⊕ space` with `(x̄,u)(ȳ,v) = (x̄ȳ, u·ȳ + ε v·x̄)`;
/// the space squares to zero.
pub fn split_null_extension<K: Field>(action: &ModuleAction<K>, sign: ActionSign) -> Result<Algebra<K>> {
    let base = &action.base;
    let (n, m) = (base.dim(), action.space_dim);
    if action.right_action.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: action.right_action.len() });
    }
    for a in &action.right_action {
        if a.rows() != m || a.cols() != m {
            return Err(Error::DimensionMismatch { expected: m, got: a.rows().max(a.cols()) });
        }
    }
    let k = base.field();
    let names = base
        .basis_names()
        .iter()
        .cloned()
        .chain((0..m).map(|s| format!("u{s}")))
        .collect();
    let eps = match sign {
        ActionSign::Symmetric => k.one(),
        ActionSign::Antisymmetric => -k.one(),
    };
    Algebra::from_fn(format!("{}⋉V", base.name()), k, names, |i, j| {
        let mut out = Vector::zeros(k, n + m);
        match (i < n, j < n) {
            (true, true) => {
                for (c, t) in base.product(i, j).support() {
                    out.set(c, t.clone());
                }
            }
            // (0,u_s)(e_j,0) = (0, u_s·e_j)
            (false, true) => {
                for r in 0..m {
                    out.set(n + r, action.right_action[j].get(r, i - n).clone());
                }
            }
            // (e_i,0)(0,u_s) = (0, ε u_s·e_i)
            (true, false) => {
                for r in 0..m {
                    out.set(n + r, eps.clone() * action.right_action[i].get(r, j - n).clone());
                }
            }
            (false, false) => {}
        }
        out
    })
}

/// A product of two annihilator elements that should vanish for the action
/// to be well defined on cosets, but does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinednessFinding<K: Field> {
    pub left: Vector<K>,
    pub right: Vector<K>,
    pub product: Vector<K>,
}

/// Quotient by the annihilator, the induced action on the annihilator, and
/// any well-definedness failures found along the way.
#[derive(Clone, Debug)]
pub struct ModuleConstruction<K: Field> {
    pub kind: AnnihilatorKind,
    pub annihilator: Subspace<K>,
    pub action: ModuleAction<K>,
    pub sign: ActionSign,
    pub findings: Vec<WellDefinednessFinding<K>>,
}

impl<K: Field> ModuleConstruction<K> {
    pub fn well_defined(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn extension(&self) -> Result<Algebra<K>> {
        split_null_extension(&self.action, self.sign)
    }
}

/// The action `u·x̄ := u x` of `A/ann` on `ann`. For the Jordan kind both
/// sides act equally; for the Malcev kind `x̄u = −u x̄`. The action is only
/// well defined if `u w = 0` for all `u, w` in the annihilator; every
/// failing basis pair is recorded rather than assumed away.
pub fn module_action_from_annihilator<K: Field>(
    alg: &Algebra<K>,
    kind: AnnihilatorKind,
) -> Result<ModuleConstruction<K>> {
    let ann = annihilator(alg, kind);
    if let Some(w) = is_ideal(alg, &ann)? {
        return Err(Error::NotAnIdeal(format!("{kind} annihilator: {}", w.describe(alg))));
    }
    let quotient = quotient_algebra(alg, &ann)?;
    let k = alg.field();
    let m = ann.dim();

    let mut findings = Vec::new();
    for u in ann.basis() {
        for w in ann.basis() {
            let p = alg.mul(u, w);
            if !p.is_zero() {
                findings.push(WellDefinednessFinding { left: u.clone(), right: w.clone(), product: p });
            }
        }
    }

    let mut right_action = Vec::with_capacity(quotient.representatives.len());
    for &r in &quotient.representatives {
        let x = alg.basis_vector(r);
        let mut columns = Vec::with_capacity(m);
        for u in ann.basis() {
            let ux = alg.mul(u, &x);
            let coords = ann
                .coordinates(&ux)?
                .ok_or_else(|| Error::NotAnIdeal(format!("{kind} annihilator is not closed under the action")))?;
            columns.push(Vector::from_entries(k, coords));
        }
        right_action.push(Matrix::from_columns(k, m, &columns)?);
    }
    Ok(ModuleConstruction {
        kind,
        annihilator: ann,
        action: ModuleAction { base: quotient.algebra, space_dim: m, right_action },
        sign: ActionSign::for_kind(kind),
        findings,
    })
}
