use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{annihilator, ideal_closure, AnnihilatorKind, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::scalar::Field;

/// Default cap on `p^dim` for exhaustive enumeration over F_p.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityOptions {
    pub max_enum: u64,
    pub random_trials: usize,
    pub seed: u64,
    pub max_closure_iters: Option<usize>,
}

impl Default for SimplicityOptions {
    fn default() -> Self {
        SimplicityOptions { max_enum: DEFAULT_MAX_ENUM, random_trials: 64, seed: 0, max_closure_iters: None }
    }
}

/// Simplicity in the annihilator sense: the annihilator is nonzero and the
/// only ideals are 0, the annihilator and the whole algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict<K: Field> {
    /// `witness` is the ideal generated by `generator`; it is none of the
    /// allowed ideals.
    NotSimple { generator: Vector<K>, witness: Subspace<K> },
    /// Exhaustive over every projective point of a finite field.
    Simple { generators_checked: u64 },
    /// No refutation found among the tested generators (infinite field).
    ProbablySimple { generators_checked: u64 },
    AnnihilatorZero,
    /// The annihilator is the whole algebra; whether that counts as simple
    /// is left open.
    AnnihilatorIsWholeAlgebra,
}

impl<K: Field> SimplicityVerdict<K> {
    pub fn label(&self) -> &'static str {
        match self {
            SimplicityVerdict::NotSimple { .. } => "NotSimple",
            SimplicityVerdict::Simple { .. } => "Simple",
            SimplicityVerdict::ProbablySimple { .. } => "ProbablySimple",
            SimplicityVerdict::AnnihilatorZero => "AnnihilatorZero",
            SimplicityVerdict::AnnihilatorIsWholeAlgebra => "AnnihilatorIsWholeAlgebra",
        }
    }
}

/// Over F_p with `p^dim <= max_enum`, every nonzero vector up to scalars is
/// tried as a generator; this is a complete decision because a forbidden
/// ideal always contains a vector whose closure is forbidden. Over Q only
/// refutation is possible: basis vectors, annihilator basis vectors and
/// `random_trials` random vectors are tried.
pub fn is_simple<K: Field>(
    alg: &Algebra<K>,
    kind: AnnihilatorKind,
    opts: &SimplicityOptions,
) -> Result<SimplicityVerdict<K>> {
    let ann = annihilator(alg, kind);
    if ann.is_zero() {
        return Ok(SimplicityVerdict::AnnihilatorZero);
    }
    if ann.is_full() {
        return Ok(SimplicityVerdict::AnnihilatorIsWholeAlgebra);
    }
    let k = alg.field();
    let n = alg.dim();
    let mut checked = 0u64;
    let mut test = |v: Vector<K>| -> Result<Option<SimplicityVerdict<K>>> {
        checked += 1;
        let c = ideal_closure(alg, std::slice::from_ref(&v), opts.max_closure_iters)?;
        if !c.is_zero() && !c.is_full() && c != ann {
            return Ok(Some(SimplicityVerdict::NotSimple { generator: v, witness: c }));
        }
        Ok(None)
    };

    match k.order() {
        Some(p) => {
            let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if total > opts.max_enum as u128 {
                return Err(Error::Budget(format!(
                    "exhaustive simplicity check needs {p}^{n} > {} vectors",
                    opts.max_enum
                )));
            }
            // projective points: first nonzero coordinate is 1
            for lead in 0..n {
                let tail = n - lead - 1;
                for code in 0..(p as u128).pow(tail as u32) {
                    let mut v = Vector::zeros(k, n);
                    v.set(lead, k.one());
                    let mut c = code;
                    for pos in (lead + 1..n).rev() {
                        v.set(pos, k.nth_element((c % p as u128) as u64));
                        c /= p as u128;
                    }
                    if let Some(verdict) = test(v)? {
                        return Ok(verdict);
                    }
                }
            }
            Ok(SimplicityVerdict::Simple { generators_checked: checked })
        }
        None => {
            for i in 0..n {
                if let Some(verdict) = test(alg.basis_vector(i))? {
                    return Ok(verdict);
                }
            }
            for w in ann.basis().to_vec() {
                if let Some(verdict) = test(w)? {
                    return Ok(verdict);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.random_trials {
                let v = Vector::from_entries(k, (0..n).map(|_| k.random(&mut rng)).collect());
                if v.is_zero() {
                    continue;
                }
                if let Some(verdict) = test(v)? {
                    return Ok(verdict);
                }
            }
            Ok(SimplicityVerdict::ProbablySimple { generators_checked: checked })
        }
    }
}
