use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::identity::{Expr, IdentityDef, Term};

/// Highest variable multiplicity that full polarization handles. Recovering
/// `f` from its linearization divides by `m!`, which needs `m < char`; the
/// characteristic guard keeps `char >= 5`.
pub const MAX_MULTIPLICITY: usize = 3;

/// Full polarization. A variable of multiplicity `m > 1` becomes `m` fresh
/// variables `x'`, `x''`, ...; each term is replaced by the sum over all `m!`
/// ways of distributing the fresh variables over the original occurrences.
///
/// `characteristic` is 0 for Q. Variables that occur in no term are dropped.
pub fn linearize(id: &IdentityDef, characteristic: u64) -> Result<IdentityDef> {
    let degrees = id.multidegree()?;
    for (v, &m) in degrees.iter().enumerate() {
        if m > MAX_MULTIPLICITY {
            return Err(Error::Linearization(format!(
                "{}: variable {} has multiplicity {m} > {MAX_MULTIPLICITY}",
                id.name, id.variables[v]
            )));
        }
        if characteristic != 0 && m as u64 >= characteristic {
            return Err(Error::Linearization(format!(
                "{}: multiplicity {m} of {} is not below the characteristic {characteristic}",
                id.name, id.variables[v]
            )));
        }
    }
    if degrees.iter().all(|&m| m == 1) && !id.uses_jacobian() {
        return Ok(id.clone());
    }

    // fresh[v] = indices of the copies of v in the new variable list
    let mut names = Vec::new();
    let mut fresh: Vec<Vec<usize>> = Vec::with_capacity(degrees.len());
    for (v, &m) in degrees.iter().enumerate() {
        let mut copies = Vec::with_capacity(m);
        for c in 0..m {
            copies.push(names.len());
            if m == 1 {
                names.push(id.variables[v].clone());
            } else {
                names.push(format!("{}{}", id.variables[v], "'".repeat(c + 1)));
            }
        }
        fresh.push(copies);
    }

    let mut merged: BTreeMap<Term, BigRational> = BTreeMap::new();
    for (t, c) in id.expanded() {
        let leaves = t.leaves();
        for labels in distributions(&leaves, &fresh) {
            *merged.entry(t.relabeled(&labels)).or_insert_with(BigRational::zero) += &c;
        }
    }
    merged.retain(|_, c| !c.is_zero());

    Ok(IdentityDef {
        name: format!("{} (linearized)", id.name),
        description: id.description.clone(),
        variables: names,
        terms: merged.into_iter().map(|(t, c)| (c, Expr::from(&t))).collect(),
    })
}

/// Every relabeling of `leaves` that sends the occurrences of each variable
/// bijectively onto its fresh copies.
fn distributions(leaves: &[usize], fresh: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![leaves.to_vec()];
    for (v, copies) in fresh.iter().enumerate() {
        let positions: Vec<usize> = leaves.iter().enumerate().filter(|(_, &l)| l == v).map(|(i, _)| i).collect();
        let perms = permutations(copies);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for labels in &out {
            for p in &perms {
                let mut l = labels.clone();
                for (pos, &c) in positions.iter().zip(p) {
                    l[*pos] = c;
                }
                next.push(l);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}
