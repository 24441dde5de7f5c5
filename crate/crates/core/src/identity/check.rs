use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::identity::{eval_expr, eval_identity, linearize, Expr, IdentityDef, Term};
use crate::linalg::Vector;
use crate::scalar::{Field, Scalar};

/// Largest number of basis tuples an exhaustive sweep will visit.
pub const EXHAUSTIVE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CheckMode {
    /// Linearize, then evaluate on every tuple of basis vectors.
    Exhaustive,
    /// Evaluate the original identity at pseudorandom vectors.
    Random { samples: usize, seed: u64 },
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive => f.write_str("exhaustive"),
            CheckMode::Random { samples, seed } => write!(f, "random({samples}, seed {seed})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    /// Split the sweep over threads. Results are identical either way.
    pub parallel: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: CheckMode::Exhaustive, parallel: false }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn random(samples: usize, seed: u64) -> Self {
        CheckOptions { mode: CheckMode::Random { samples, seed }, parallel: false }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvaluatedForm {
    Original,
    Linearized,
}

/// A failing assignment together with the nonzero value it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample<K: Field> {
    pub form: EvaluatedForm,
    pub variables: Vec<String>,
    pub assignment: Vec<Vector<K>>,
    /// Basis indices of the assignment, for exhaustive sweeps.
    pub basis_indices: Option<Vec<usize>>,
    pub value: Vector<K>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<K: Field> {
    pub identity: String,
    pub mode: CheckMode,
    /// The identity actually evaluated (the linearization, for sweeps).
    pub evaluated: IdentityDef,
    /// Number of assignments evaluated.
    pub assignments: u64,
    pub counterexample: Option<Counterexample<K>>,
}

impl<K: Field> CheckReport<K> {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Re-evaluates the stored counterexample; true if it reproduces the
    /// stored nonzero value. Holding reports recheck trivially.
    pub fn recheck(&self, alg: &Algebra<K>) -> Result<bool> {
        match &self.counterexample {
            None => Ok(true),
            Some(ce) => {
                let v = eval_identity(alg, &self.evaluated, &ce.assignment)?;
                Ok(!v.is_zero() && v == ce.value)
            }
        }
    }

    pub fn summary(&self, alg: &Algebra<K>) -> String {
        match &self.counterexample {
            None => format!("{} holds ({}, {} assignments)", self.identity, self.mode, self.assignments),
            Some(ce) => {
                let args: Vec<String> = ce
                    .variables
                    .iter()
                    .zip(&ce.assignment)
                    .map(|(n, v)| format!("{n} = {}", alg.format_vector(v)))
                    .collect();
                format!("{} fails at {}: value {}", self.identity, args.join(", "), alg.format_vector(&ce.value))
            }
        }
    }
}

/// Evaluates an expression at the given vectors.
pub fn evaluate_term<K: Field>(alg: &Algebra<K>, term: &Expr, assignment: &[Vector<K>]) -> Result<Vector<K>> {
    if let Some(v) = term.max_var() {
        if v >= assignment.len() {
            return Err(Error::DimensionMismatch { expected: v + 1, got: assignment.len() });
        }
    }
    for a in assignment {
        a.check_len(alg.dim())?;
    }
    Ok(eval_expr(alg, term, assignment))
}

pub fn check_identity<K: Field>(alg: &Algebra<K>, id: &IdentityDef, opts: &CheckOptions) -> Result<CheckReport<K>> {
    match opts.mode {
        CheckMode::Exhaustive => exhaustive(alg, id, opts.parallel),
        CheckMode::Random { samples, seed } => random(alg, id, samples, seed),
    }
}

fn random<K: Field>(alg: &Algebra<K>, id: &IdentityDef, samples: usize, seed: u64) -> Result<CheckReport<K>> {
    let k = alg.field();
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    let mut done = 0u64;
    for _ in 0..samples {
        let assignment: Vec<Vector<K>> = (0..id.variables.len())
            .map(|_| Vector::from_entries(k, (0..n).map(|_| k.random(&mut rng)).collect()))
            .collect();
        done += 1;
        let value = eval_identity(alg, id, &assignment)?;
        if !value.is_zero() {
            counterexample = Some(Counterexample {
                form: EvaluatedForm::Original,
                variables: id.variables.clone(),
                assignment,
                basis_indices: None,
                value,
            });
            break;
        }
    }
    Ok(CheckReport {
        identity: id.name.clone(),
        mode: CheckMode::Random { samples, seed },
        evaluated: id.clone(),
        assignments: done,
        counterexample,
    })
}

fn exhaustive<K: Field>(alg: &Algebra<K>, id: &IdentityDef, parallel: bool) -> Result<CheckReport<K>> {
    let lin = linearize(id, alg.field().characteristic())?;
    let form = if &lin == id { EvaluatedForm::Original } else { EvaluatedForm::Linearized };
    let n = alg.dim() as u64;
    let m = lin.variables.len() as u32;
    let total = n.checked_pow(m).filter(|&t| t <= EXHAUSTIVE_BUDGET).ok_or_else(|| {
        Error::Budget(format!("exhaustive check of {} needs {n}^{m} basis tuples", id.name))
    })?;
    let terms: Vec<(BigRational, Term)> = lin.expanded().into_iter().map(|(t, c)| (c, t)).collect();

    let failure = sweep(alg, &terms, m as usize, parallel)?;
    let (assignments, counterexample) = match failure {
        None => (total, None),
        Some(digits) => {
            let assignment: Vec<Vector<K>> = digits.iter().map(|&b| alg.basis_vector(b)).collect();
            let value = eval_identity(alg, &lin, &assignment)?;
            debug_assert!(!value.is_zero());
            let index = digits.iter().fold(0u64, |acc, &d| acc * n + d as u64);
            (
                index + 1,
                Some(Counterexample {
                    form,
                    variables: lin.variables.clone(),
                    assignment,
                    basis_indices: Some(digits),
                    value,
                }),
            )
        }
    };
    Ok(CheckReport { identity: id.name.clone(), mode: CheckMode::Exhaustive, evaluated: lin, assignments, counterexample })
}

/// First failing basis tuple in lexicographic order, if any. Runs on exact
/// integers when the scaled table fits, otherwise on field elements.
fn sweep<K: Field>(alg: &Algebra<K>, terms: &[(BigRational, Term)], nvars: usize, parallel: bool) -> Result<Option<Vec<usize>>> {
    let k = alg.field();
    let n = alg.dim();
    match k.order() {
        Some(p) if p < (1 << 31) => {
            let arith = ModArith { p };
            let table = lift_table(alg, |q| Some(arith.reduce(q)));
            let coeffs: Option<Vec<u64>> = terms.iter().map(|(c, _)| arith.reduce_checked(c)).collect();
            let coeffs = coeffs.ok_or_else(|| Error::Linearization("coefficient denominator divisible by p".into()))?;
            if let Some(table) = table {
                if let Ok(r) = Sweep::new(&arith, n, table, terms, coeffs, nvars).run(parallel) {
                    return Ok(r);
                }
            }
        }
        Some(_) => {}
        None => {
            let denom = alg_denominator(alg);
            let table = lift_table(alg, |q| (q * BigRational::from_integer(denom.clone())).to_integer().to_i128());
            let cden = terms.iter().fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
            let coeffs: Option<Vec<i128>> = terms
                .iter()
                .map(|(c, _)| (c * BigRational::from_integer(cden.clone())).to_integer().to_i128())
                .collect();
            if let (Some(table), Some(coeffs)) = (table, coeffs) {
                if let Ok(r) = Sweep::new(&IntArith, n, table, terms, coeffs, nvars).run(parallel) {
                    return Ok(r);
                }
            }
        }
    }
    let arith = ExactArith { field: k.clone() };
    let table = lift_table(alg, |q| k.from_rational(q).ok()).expect("field elements lift");
    let coeffs = terms.iter().map(|(c, _)| k.from_rational(c)).collect::<Result<Vec<_>>>()?;
    Sweep::new(&arith, n, table, terms, coeffs, nvars)
        .run(parallel)
        .map_err(|_| unreachable!("exact arithmetic does not overflow"))
}

fn alg_denominator<K: Field>(alg: &Algebra<K>) -> BigInt {
    let mut d = BigInt::one();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for (_, c) in alg.product_support(i, j) {
                d = d.lcm(alg.field().lift(c).denom());
            }
        }
    }
    d
}

type Sparse<C> = Vec<(usize, C)>;

fn lift_table<K: Field, C>(alg: &Algebra<K>, f: impl Fn(&BigRational) -> Option<C>) -> Option<Vec<Sparse<C>>> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = Vec::new();
            for (k, c) in alg.product_support(i, j) {
                row.push((*k, f(&alg.field().lift(c))?));
            }
            out.push(row);
        }
    }
    Some(out)
}

/// Arithmetic for the sweep. `None` signals overflow.
trait Arith: Sync {
    type C: Clone + Send + Sync;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Option<Self::C>;
    fn add_assign(&self, acc: &mut Self::C, b: &Self::C) -> Option<()>;
}

struct IntArith;

impl Arith for IntArith {
    type C = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
    fn mul(&self, a: &i128, b: &i128) -> Option<i128> {
        a.checked_mul(*b)
    }
    fn add_assign(&self, acc: &mut i128, b: &i128) -> Option<()> {
        *acc = acc.checked_add(*b)?;
        Some(())
    }
}

struct ModArith {
    p: u64,
}

impl ModArith {
    fn reduce(&self, q: &BigRational) -> u64 {
        // lifted F_p values are integers in [0, p)
        q.to_integer().to_u64().expect("residue fits") % self.p
    }

    fn reduce_checked(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(num * self.pow(den, self.p - 2) % self.p)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }
}

impl Arith for ModArith {
    type C = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(a * b % self.p)
    }
    fn add_assign(&self, acc: &mut u64, b: &u64) -> Option<()> {
        *acc = (*acc + b) % self.p;
        Some(())
    }
}

struct ExactArith<K: Field> {
    field: K,
}

impl<K: Field> Arith for ExactArith<K> {
    type C = K::Elem;
    fn zero(&self) -> K::Elem {
        self.field.zero()
    }
    fn one(&self) -> K::Elem {
        self.field.one()
    }
    fn is_zero(&self, a: &K::Elem) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &K::Elem, b: &K::Elem) -> Option<K::Elem> {
        Some(a.clone() * b.clone())
    }
    fn add_assign(&self, acc: &mut K::Elem, b: &K::Elem) -> Option<()> {
        *acc = acc.clone() + b.clone();
        Some(())
    }
}

struct Overflow;

/// A node of the shared subterm DAG.
struct Node {
    /// Sorted variables below this node.
    vars: Vec<usize>,
    children: Option<(usize, usize)>,
}

/// Memoized sweep: every proper subterm gets a table of its values on all
/// basis assignments of its own variables; root products are accumulated
/// per tuple.
struct Sweep<'a, A: Arith> {
    arith: &'a A,
    n: usize,
    nvars: usize,
    table: Vec<Sparse<A::C>>,
    nodes: Vec<Node>,
    /// (coefficient, left node, right node) per root; a leaf root has no right node.
    roots: Vec<(A::C, usize, Option<usize>)>,
}

impl<'a, A: Arith> Sweep<'a, A> {
    fn new(arith: &'a A, n: usize, table: Vec<Sparse<A::C>>, terms: &[(BigRational, Term)], coeffs: Vec<A::C>, nvars: usize) -> Self {
        let mut s = Sweep { arith, n, nvars, table, nodes: Vec::new(), roots: Vec::new() };
        let mut ids: HashMap<Term, usize> = HashMap::new();
        for ((_, t), c) in terms.iter().zip(coeffs) {
            let root = match t {
                Term::Var(_) => (c, s.intern(t, &mut ids), None),
                Term::Mul(a, b) => (c, s.intern(a, &mut ids), Some(s.intern(b, &mut ids))),
            };
            s.roots.push(root);
        }
        s
    }

    fn intern(&mut self, t: &Term, ids: &mut HashMap<Term, usize>) -> usize {
        if let Some(&id) = ids.get(t) {
            return id;
        }
        let node = match t {
            Term::Var(v) => Node { vars: vec![*v], children: None },
            Term::Mul(a, b) => {
                let (ia, ib) = (self.intern(a, ids), self.intern(b, ids));
                let mut vars: Vec<usize> = self.nodes[ia].vars.iter().chain(&self.nodes[ib].vars).copied().collect();
                vars.sort_unstable();
                Node { vars, children: Some((ia, ib)) }
            }
        };
        self.nodes.push(node);
        ids.insert(t.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Index of a node's table entry for a full assignment.
    fn index(&self, node: usize, digits: &[usize]) -> usize {
        self.nodes[node].vars.iter().fold(0, |acc, &v| acc * self.n + digits[v])
    }

    fn product_into(&self, a: &Sparse<A::C>, b: &Sparse<A::C>, scale: &A::C, acc: &mut [A::C], touched: &mut Vec<usize>) -> Option<()> {
        for (i, ai) in a {
            let sa = self.arith.mul(scale, ai)?;
            for (j, bj) in b {
                let c = self.arith.mul(&sa, bj)?;
                for (k, t) in &self.table[i * self.n + j] {
                    let v = self.arith.mul(&c, t)?;
                    if self.arith.is_zero(&acc[*k]) {
                        touched.push(*k);
                    }
                    self.arith.add_assign(&mut acc[*k], &v)?;
                }
            }
        }
        Some(())
    }

    fn build_tables(&self) -> std::result::Result<Vec<Vec<Sparse<A::C>>>, Overflow> {
        let mut tables: Vec<Vec<Sparse<A::C>>> = Vec::with_capacity(self.nodes.len());
        let one = self.arith.one();
        let mut acc = vec![self.arith.zero(); self.n];
        let mut touched = Vec::new();
        for node in &self.nodes {
            let size = self.n.pow(node.vars.len() as u32);
            let mut t = Vec::with_capacity(size);
            match node.children {
                None => {
                    for b in 0..self.n {
                        t.push(vec![(b, one.clone())]);
                    }
                }
                Some((ia, ib)) => {
                    let mut digits = vec![0usize; self.nvars];
                    for idx in 0..size {
                        let mut r = idx;
                        for &v in node.vars.iter().rev() {
                            digits[v] = r % self.n;
                            r /= self.n;
                        }
                        let a = &tables[ia][self.index(ia, &digits)];
                        let b = &tables[ib][self.index(ib, &digits)];
                        self.product_into(a, b, &one, &mut acc, &mut touched).ok_or(Overflow)?;
                        t.push(drain(self.arith, &mut acc, &mut touched));
                    }
                }
            }
            tables.push(t);
        }
        Ok(tables)
    }

    /// Scans tuples whose first digit is `first`; returns the first failure.
    fn scan_block(&self, tables: &[Vec<Sparse<A::C>>], first: usize) -> std::result::Result<Option<Vec<usize>>, Overflow> {
        let mut acc = vec![self.arith.zero(); self.n];
        let mut touched = Vec::new();
        let inner = self.n.pow(self.nvars.saturating_sub(1) as u32);
        let mut digits = vec![0usize; self.nvars];
        for idx in 0..inner {
            let mut r = idx;
            for d in digits.iter_mut().skip(1).rev() {
                *d = r % self.n;
                r /= self.n;
            }
            digits[0] = first;
            for (c, a, b) in &self.roots {
                let va = &tables[*a][self.index(*a, &digits)];
                match b {
                    Some(b) => {
                        let vb = &tables[*b][self.index(*b, &digits)];
                        self.product_into(va, vb, c, &mut acc, &mut touched).ok_or(Overflow)?;
                    }
                    None => {
                        for (k, x) in va {
                            let v = self.arith.mul(c, x).ok_or(Overflow)?;
                            if self.arith.is_zero(&acc[*k]) {
                                touched.push(*k);
                            }
                            self.arith.add_assign(&mut acc[*k], &v).ok_or(Overflow)?;
                        }
                    }
                }
            }
            if !drain(self.arith, &mut acc, &mut touched).is_empty() {
                return Ok(Some(digits));
            }
        }
        Ok(None)
    }

    fn run(&self, parallel: bool) -> std::result::Result<Option<Vec<usize>>, Overflow> {
        if self.nvars == 0 || self.roots.is_empty() {
            return Ok(None);
        }
        let tables = self.build_tables()?;
        if parallel {
            let results: Vec<std::result::Result<Option<Vec<usize>>, Overflow>> =
                (0..self.n).into_par_iter().map(|b| self.scan_block(&tables, b)).collect();
            for r in results {
                if let Some(d) = r? {
                    return Ok(Some(d));
                }
            }
            Ok(None)
        } else {
            for b in 0..self.n {
                if let Some(d) = self.scan_block(&tables, b)? {
                    return Ok(Some(d));
                }
            }
            Ok(None)
        }
    }
}

/// Collects the nonzero touched entries, sorted, and clears the scratch.
fn drain<A: Arith>(arith: &A, acc: &mut [A::C], touched: &mut Vec<usize>) -> Sparse<A::C> {
    touched.sort_unstable();
    touched.dedup();
    let mut out = Vec::new();
    for &k in touched.iter() {
        if !arith.is_zero(&acc[k]) {
            out.push((k, std::mem::replace(&mut acc[k], arith.zero())));
        }
    }
    touched.clear();
    out
}
