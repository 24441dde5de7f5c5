use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A bracketed monomial: a binary tree whose leaves are variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    /// Leaf labels, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::Mul(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn multidegree(&self, nvars: usize) -> Vec<usize> {
        let mut d = vec![0; nvars];
        for v in self.leaves() {
            if v < nvars {
                d[v] += 1;
            }
        }
        d
    }

    /// Replaces the leaves, in left-to-right order, by `labels`.
    pub fn relabeled(&self, labels: &[usize]) -> Term {
        let mut it = labels.iter();
        let t = self.relabel_with(&mut it);
        debug_assert!(it.next().is_none());
        t
    }

    fn relabel_with<'a>(&self, it: &mut impl Iterator<Item = &'a usize>) -> Term {
        match self {
            Term::Var(_) => Term::Var(*it.next().expect("enough labels")),
            Term::Mul(a, b) => {
                let l = a.relabel_with(it);
                let r = b.relabel_with(it);
                Term::mul(l, r)
            }
        }
    }

    /// Compares tree shapes only: leaves before nodes, then left subtrees,
    /// then right subtrees.
    pub fn shape_cmp(&self, other: &Term) -> Ordering {
        match (self, other) {
            (Term::Var(_), Term::Var(_)) => Ordering::Equal,
            (Term::Var(_), Term::Mul(..)) => Ordering::Less,
            (Term::Mul(..), Term::Var(_)) => Ordering::Greater,
            (Term::Mul(a1, b1), Term::Mul(a2, b2)) => a1.shape_cmp(a2).then_with(|| b1.shape_cmp(b2)),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Term::Var(v) => names.get(*v).cloned().unwrap_or_else(|| format!("v{v}")),
            Term::Mul(a, b) => format!("{}·{}", a.render_factor(names), b.render_factor(names)),
        }
    }

    fn render_factor(&self, names: &[String]) -> String {
        match self {
            Term::Var(_) => self.render(names),
            Term::Mul(..) => format!("({})", self.render(names)),
        }
    }
}

/// Monomial order: tree shape first, then leaf labels lexicographically.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape_cmp(other).then_with(|| self.leaves().cmp(&other.leaves()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A tree that may also contain the right-Jacobian macro
/// `J(a, b, c) = (ab)c - a(bc) - (ac)b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    Mul(Box<Expr>, Box<Expr>),
    Jacobian(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn jacobian(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::Jacobian(Box::new(a), Box::new(b), Box::new(c))
    }

    pub fn has_jacobian(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::Mul(a, b) => a.has_jacobian() || b.has_jacobian(),
            Expr::Jacobian(..) => true,
        }
    }

    /// Leaf multiset, counted per variable. The macro is homogeneous, so
    /// each of its arguments is counted once.
    pub fn multidegree(&self, nvars: usize) -> Vec<usize> {
        let mut d = vec![0; nvars];
        self.count_leaves(&mut d);
        d
    }

    fn count_leaves(&self, d: &mut [usize]) {
        match self {
            Expr::Var(v) => {
                if *v < d.len() {
                    d[*v] += 1;
                }
            }
            Expr::Mul(a, b) => {
                a.count_leaves(d);
                b.count_leaves(d);
            }
            Expr::Jacobian(a, b, c) => {
                a.count_leaves(d);
                b.count_leaves(d);
                c.count_leaves(d);
            }
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(v) => Some(*v),
            Expr::Mul(a, b) => a.max_var().max(b.max_var()),
            Expr::Jacobian(a, b, c) => a.max_var().max(b.max_var()).max(c.max_var()),
        }
    }

    /// Expands the macro into a combination of plain monomials.
    pub fn expand(&self) -> BTreeMap<Term, i64> {
        let mut out = BTreeMap::new();
        for (c, t) in self.expand_list() {
            *out.entry(t).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn expand_list(&self) -> Vec<(i64, Term)> {
        match self {
            Expr::Var(v) => vec![(1, Term::Var(*v))],
            Expr::Mul(a, b) => {
                let la = a.expand_list();
                let lb = b.expand_list();
                let mut out = Vec::with_capacity(la.len() * lb.len());
                for (ca, ta) in &la {
                    for (cb, tb) in &lb {
                        out.push((ca * cb, Term::mul(ta.clone(), tb.clone())));
                    }
                }
                out
            }
            Expr::Jacobian(a, b, c) => {
                let (a, b, c) = (a.as_ref().clone(), b.as_ref().clone(), c.as_ref().clone());
                let first = Expr::mul(Expr::mul(a.clone(), b.clone()), c.clone());
                let second = Expr::mul(a.clone(), Expr::mul(b.clone(), c.clone()));
                let third = Expr::mul(Expr::mul(a, c), b);
                let mut out = first.expand_list();
                out.extend(second.expand_list().into_iter().map(|(k, t)| (-k, t)));
                out.extend(third.expand_list().into_iter().map(|(k, t)| (-k, t)));
                out
            }
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Expr::Var(v) => names.get(*v).cloned().unwrap_or_else(|| format!("v{v}")),
            Expr::Mul(a, b) => format!("{}·{}", a.render_factor(names), b.render_factor(names)),
            Expr::Jacobian(a, b, c) => {
                format!("J({}, {}, {})", a.render(names), b.render(names), c.render(names))
            }
        }
    }

    fn render_factor(&self, names: &[String]) -> String {
        match self {
            Expr::Mul(..) => format!("({})", self.render(names)),
            _ => self.render(names),
        }
    }
}

impl From<&Term> for Expr {
    fn from(t: &Term) -> Expr {
        match t {
            Term::Var(v) => Expr::Var(*v),
            Term::Mul(a, b) => Expr::mul(a.as_ref().into(), b.as_ref().into()),
        }
    }
}
