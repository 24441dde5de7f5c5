use crate::algebra::{derive_bullet, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::scalar::Field;

/// Outcome of checking that `phi: J → bullet(A)` is an injective homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck<K: Field> {
    pub injective: bool,
    /// First basis pair `(i, j)` with `phi(e_i • e_j) ≠ phi(e_i) • phi(e_j)`,
    /// with both sides.
    pub failing_pair: Option<(usize, usize, Vector<K>, Vector<K>)>,
}

impl<K: Field> WitnessCheck<K> {
    pub fn holds(&self) -> bool {
        self.injective && self.failing_pair.is_none()
    }
}

pub fn verify_special_witness<K: Field>(j: &Algebra<K>, a: &Algebra<K>, phi: &LinearMap<K>) -> Result<WitnessCheck<K>> {
    if phi.domain_dim() != j.dim() {
        return Err(Error::DimensionMismatch { expected: j.dim(), got: phi.domain_dim() });
    }
    if phi.codomain_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: phi.codomain_dim() });
    }
    let target = derive_bullet(a)?;
    let images: Vec<Vector<K>> = (0..j.dim()).map(|i| phi.matrix().column(i)).collect();
    let mut failing_pair = None;
    'outer: for x in 0..j.dim() {
        for y in 0..j.dim() {
            let lhs = phi.apply(j.product(x, y))?;
            let rhs = target.mul(&images[x], &images[y]);
            if lhs != rhs {
                failing_pair = Some((x, y, lhs, rhs));
                break 'outer;
            }
        }
    }
    Ok(WitnessCheck { injective: phi.is_injective(), failing_pair })
}
