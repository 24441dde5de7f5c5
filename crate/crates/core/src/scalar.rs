//! Exact scalar fields.
//!
//! Two families are supported: the rationals (arbitrary precision) and the
//! prime fields `F_p`. Fields of characteristic 2 or 3 are refused when the
//! field is constructed, so every later computation may divide by 2, 3 and 6.
//! Identity linearization relies on this: variables of multiplicity up to 3
//! polarize soundly only when `3! ` is invertible and `p > 3`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Runtime description of a scalar field, as it appears in files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    /// `F_p`, rejecting `p` in {2, 3} and composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Parses "Q", "F5", "Fp5" or a bare prime.
impl std::str::FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = t
            .strip_prefix("Fp")
            .or_else(|| t.strip_prefix("F"))
            .or_else(|| t.strip_prefix("GF"))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Schema(format!("unrecognized field {s:?}")))?;
        FieldDescriptor::prime(p)
    }
}

fn check_modulus(p: u64) -> Result<()> {
    if p == 2 || p == 3 {
        return Err(Error::Characteristic(p));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 1 << 62 {
        return Err(Error::Schema(format!("modulus {p} too large")));
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of an exact field.
///
/// Values are canonical, so `==` is field equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.clone() + a.clone() * b.clone();
    }
}

/// A field whose elements are [`Scalar`]s. Implementors are cheap descriptor
/// values that know how to build constants.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Scalar;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(a.clone() * self.inv(b)?)
    }

    /// Parses the scalar text format: `-?[0-9]+(/[0-9]+)?`.
    fn parse(&self, text: &str) -> Result<Self::Elem> {
        self.from_rational(&parse_rational(text)?)
    }

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    /// The `k`-th element in a fixed enumeration of a finite field.
    fn nth_element(&self, k: u64) -> Self::Elem;

    /// A small pseudorandom element (bounded integers over Q, uniform over F_p).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    /// Canonical rational representative: the value itself over Q, the
    /// residue in `[0, p)` over F_p.
    fn lift(&self, a: &Self::Elem) -> BigRational;
}

/// Parses `-?[0-9]+(/[0-9]+)?` with no whitespace into a canonical rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let n: BigInt = num.parse().map_err(|_| malformed())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            d.parse().map_err(|_| malformed())?
        }
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if Zero::is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn nth_element(&self, k: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let m = k.div_ceil(2) as i64;
        self.from_i64(if k % 2 == 1 { m } else { -m })
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-5..=5))
    }
    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp { value: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: v as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }
}

/// The prime field `F_p`, `p >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: u64) -> Fp {
        Fp { value: v % self.p, modulus: self.p }
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }

    fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = self.element(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.p)
    }
    fn zero(&self) -> Fp {
        self.element(0)
    }
    fn one(&self) -> Fp {
        self.element(1)
    }
    fn from_i64(&self, n: i64) -> Fp {
        let m = n.rem_euclid(self.p as i64) as u64;
        self.element(m)
    }
    fn from_rational(&self, q: &BigRational) -> Result<Fp> {
        let num = self.element(self.reduce_bigint(q.numer()));
        let den = self.element(self.reduce_bigint(q.denom()));
        self.div(&num, &den)
    }
    fn inv(&self, a: &Fp) -> Result<Fp> {
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(*a, self.p - 2))
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth_element(&self, k: u64) -> Fp {
        self.element(k)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        self.element(rng.gen_range(0..self.p))
    }
    fn lift(&self, a: &Fp) -> BigRational {
        BigRational::from_integer(a.value.into())
    }
}

/// Formats a rational in the scalar text format (`n` or `n/d`).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn descriptors() {
        assert_eq!(FieldDescriptor::rationals(), FieldDescriptor::Rationals);
        assert_eq!(FieldDescriptor::prime(5).unwrap(), FieldDescriptor::PrimeField(5));
        let err = FieldDescriptor::prime(3).unwrap_err();
        assert!(err.to_string().contains("characteristic 2 or 3 unsupported"));
        assert!(matches!(FieldDescriptor::prime(2), Err(Error::Characteristic(2))));
        assert!(matches!(FieldDescriptor::prime(15), Err(Error::NotPrime(15))));
        assert!(matches!(FieldDescriptor::prime(1), Err(Error::NotPrime(1))));
        assert_eq!("F7".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::PrimeField(7));
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
    }

    #[test]
    fn parse_rationals() {
        let k = Rationals;
        assert_eq!(k.parse("1/2").unwrap(), q(1, 2));
        let c = k.parse("-4/2").unwrap();
        assert_eq!(c, q(-2, 1));
        assert_eq!(c.to_string(), "-2");
        assert!(matches!(k.parse("1/0"), Err(Error::DivisionByZero)));
        for bad in ["", "-", "1/", "/2", "1 /2", "1/-2", "a", "1.5", "+1", "--1"] {
            assert!(matches!(k.parse(bad), Err(Error::MalformedScalar(_))), "{bad:?}");
        }
    }

    #[test]
    fn parse_prime_field() {
        let f5 = PrimeField::new(5).unwrap();
        // oracle: the modular inverse of 2 mod 5 is the r in 0..5 with 2r = 1 mod 5
        let inv2 = (0..5u64).find(|r| (2 * r) % 5 == 1).unwrap();
        assert_eq!(f5.parse("1/2").unwrap().value(), inv2);
        assert_eq!(inv2, 3);
        assert_eq!(f5.parse("-1").unwrap().value(), 4);
        assert!(matches!(f5.parse("1/5"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        let f5 = PrimeField::new(5).unwrap();
        let two = f5.from_i64(2);
        let three = f5.from_i64(3);
        // (2 / 3) * 3 = 2; brute force: 2/3 is the r with 3r = 2 mod 5
        let quotient = f5.div(&two, &three).unwrap();
        let oracle = (0..5u64).find(|r| (3 * r) % 5 == 2).unwrap();
        assert_eq!(quotient.value(), oracle);
        assert_eq!(quotient * three, two);
        assert!(matches!(f5.div(&two, &f5.zero()), Err(Error::DivisionByZero)));
        assert!(matches!(Rationals.inv(&BigRational::zero()), Err(Error::DivisionByZero)));
    }

    fn arb_q() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| q(n, d))
    }

    fn arb_f7() -> impl Strategy<Value = Fp> {
        (0u64..7).prop_map(|v| PrimeField::new(7).unwrap().element(v))
    }

    macro_rules! field_axioms {
        ($name:ident, $field:expr, $arb:expr) => {
            proptest! {
                #[test]
                fn $name(a in $arb, b in $arb, c in $arb) {
                    let k = $field;
                    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
                    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
                    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
                    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                    prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
                    prop_assert_eq!(a.clone() + (-a.clone()), k.zero());
                    prop_assert_eq!(a.clone() * k.one(), a.clone());
                    if !Scalar::is_zero(&a) {
                        prop_assert_eq!(a.clone() * k.inv(&a).unwrap(), k.one());
                    }
                    let text = a.to_string();
                    prop_assert_eq!(k.parse(&text).unwrap(), a.clone());
                }
            }
        };
    }

    field_axioms!(rational_field_axioms, Rationals, arb_q());
    field_axioms!(prime_field_axioms, PrimeField::new(7).unwrap(), arb_f7());
}
