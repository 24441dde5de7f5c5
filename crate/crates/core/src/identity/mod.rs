//! Nonassociative polynomial identities: the term language, the identity
//! catalog, linearization, and exact verification over structure-constant
//! algebras.

mod catalog;
mod check;
mod classify;
mod linearize;
mod term;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use catalog::{catalog, lookup};
pub use check::{
    check_identity, evaluate_term, CheckMode, CheckOptions, CheckReport, Counterexample, EvaluatedForm,
    EXHAUSTIVE_BUDGET,
};
pub use classify::{check_suite, classify, Class, SuiteReport};
pub use linearize::linearize;
pub use term::{Expr, Term};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational};

/// A multihomogeneous identity, stored as the single combination
/// `LHS - RHS`; it holds when the combination evaluates to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityDef {
    pub name: String,
    pub description: Option<String>,
    pub variables: Vec<String>,
    pub terms: Vec<(BigRational, Expr)>,
}

impl IdentityDef {
    /// Validates variable references and multihomogeneity.
    pub fn new(name: impl Into<String>, variables: Vec<String>, terms: Vec<(BigRational, Expr)>) -> Result<Self> {
        let id = IdentityDef { name: name.into(), description: None, variables, terms };
        for (_, e) in &id.terms {
            if let Some(v) = e.max_var() {
                if v >= id.variables.len() {
                    return Err(Error::Schema(format!("{}: undeclared variable index {v}", id.name)));
                }
            }
        }
        id.multidegree()?;
        Ok(id)
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = Some(d.into());
        self
    }

    /// Leaf count per variable, shared by every term.
    pub fn multidegree(&self) -> Result<Vec<usize>> {
        let n = self.variables.len();
        let mut degrees = self.terms.iter().map(|(_, e)| e.multidegree(n));
        let Some(first) = degrees.next() else {
            return Ok(vec![0; n]);
        };
        if degrees.any(|d| d != first) {
            return Err(Error::NotHomogeneous(self.name.clone()));
        }
        Ok(first)
    }

    pub fn is_multilinear(&self) -> bool {
        self.multidegree().map(|d| d.iter().all(|&m| m <= 1)).unwrap_or(false)
    }

    pub fn uses_jacobian(&self) -> bool {
        self.terms.iter().any(|(_, e)| e.has_jacobian())
    }

    /// The combination over plain monomials, with the Jacobian macro
    /// expanded and like terms merged.
    pub fn expanded(&self) -> BTreeMap<Term, BigRational> {
        let mut out: BTreeMap<Term, BigRational> = BTreeMap::new();
        for (c, e) in &self.terms {
            for (t, k) in e.expand() {
                *out.entry(t).or_insert_with(BigRational::zero) += c * BigRational::from_integer(k.into());
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Same identity with every term a plain monomial.
    pub fn to_monomial_form(&self) -> IdentityDef {
        IdentityDef {
            name: self.name.clone(),
            description: self.description.clone(),
            variables: self.variables.clone(),
            terms: self.expanded().iter().map(|(t, c)| (c.clone(), Expr::from(t))).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format_rational(&mag));
                s.push(' ');
            }
            s.push_str(&e.render(&self.variables));
        }
        s.push_str(" = 0");
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: IdentityDoc = serde_json::from_str(text)?;
        doc.into_identity()
    }

    pub fn to_doc(&self) -> IdentityDoc {
        IdentityDoc {
            name: self.name.clone(),
            description: self.description.clone(),
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, e)| TermDoc { coeff: format_rational(c), tree: expr_to_value(e, &self.variables) })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("identity documents serialize")
    }
}

/// Identity file format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub variables: Vec<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub tree: Value,
}

impl IdentityDoc {
    pub fn into_identity(self) -> Result<IdentityDef> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = parse_rational(&t.coeff)?;
            let e = value_to_expr(&t.tree, &self.variables, &self.name)?;
            terms.push((c, e));
        }
        let mut id = IdentityDef::new(self.name, self.variables, terms)?;
        id.description = self.description;
        Ok(id)
    }
}

fn value_to_expr(v: &Value, vars: &[String], name: &str) -> Result<Expr> {
    let bad = |msg: String| Error::Schema(format!("identity {name:?}: {msg}"));
    match v {
        Value::String(s) => vars
            .iter()
            .position(|x| x == s)
            .map(Expr::var)
            .ok_or_else(|| bad(format!("unknown variable {s:?}"))),
        Value::Array(items) if items.len() == 2 => Ok(Expr::mul(
            value_to_expr(&items[0], vars, name)?,
            value_to_expr(&items[1], vars, name)?,
        )),
        Value::Object(map) if map.len() == 1 && map.contains_key("jacobian") => match &map["jacobian"] {
            Value::Array(args) if args.len() == 3 => Ok(Expr::jacobian(
                value_to_expr(&args[0], vars, name)?,
                value_to_expr(&args[1], vars, name)?,
                value_to_expr(&args[2], vars, name)?,
            )),
            _ => Err(bad("jacobian takes exactly three arguments".into())),
        },
        other => Err(bad(format!("malformed tree {other}"))),
    }
}

fn expr_to_value(e: &Expr, vars: &[String]) -> Value {
    match e {
        Expr::Var(v) => Value::String(vars[*v].clone()),
        Expr::Mul(a, b) => Value::Array(vec![expr_to_value(a, vars), expr_to_value(b, vars)]),
        Expr::Jacobian(a, b, c) => {
            let mut m = serde_json::Map::new();
            m.insert(
                "jacobian".into(),
                Value::Array(vec![expr_to_value(a, vars), expr_to_value(b, vars), expr_to_value(c, vars)]),
            );
            Value::Object(m)
        }
    }
}

/// A vector space with a bilinear product, enough to evaluate identities.
pub trait Magma {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `acc += c * a`
    fn add_scaled(&self, acc: &mut Self::Elem, c: &BigRational, a: &Self::Elem) -> Result<()>;
}

pub fn eval_expr<M: Magma>(m: &M, e: &Expr, assignment: &[M::Elem]) -> M::Elem {
    match e {
        Expr::Var(v) => assignment[*v].clone(),
        Expr::Mul(a, b) => m.mul(&eval_expr(m, a, assignment), &eval_expr(m, b, assignment)),
        Expr::Jacobian(a, b, c) => {
            let (a, b, c) = (eval_expr(m, a, assignment), eval_expr(m, b, assignment), eval_expr(m, c, assignment));
            let first = m.mul(&m.mul(&a, &b), &c);
            let second = m.mul(&a, &m.mul(&b, &c));
            let third = m.mul(&m.mul(&a, &c), &b);
            m.sub(&m.sub(&first, &second), &third)
        }
    }
}

/// Value of `LHS - RHS` at the given assignment.
pub fn eval_identity<M: Magma>(m: &M, id: &IdentityDef, assignment: &[M::Elem]) -> Result<M::Elem> {
    if assignment.len() != id.variables.len() {
        return Err(Error::DimensionMismatch { expected: id.variables.len(), got: assignment.len() });
    }
    let mut acc = m.zero();
    for (c, e) in &id.terms {
        m.add_scaled(&mut acc, c, &eval_expr(m, e, assignment))?;
    }
    Ok(acc)
}
