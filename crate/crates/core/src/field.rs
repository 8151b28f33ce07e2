//! Exact coefficient fields.
//!
//! Everything above this module is generic over [`Field`], a context object
//! that owns the arithmetic. Two families are provided: [`PrimeField`] with a
//! modulus chosen at runtime, and [`Scalars`], which lifts any exact
//! `num-traits` number type (the rationals in practice) into a field context.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic context for an exact field.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `0` for the rationals, `p` for a prime field.
    fn characteristic(&self) -> u64;
    /// Short name used in reports, e.g. `F101` or `Q`.
    fn name(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    /// Parses an integer or `a/b` literal.
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        let d = self.from_i64(den);
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::Arithmetic(format!("denominator {den} is zero in {}", self.name())))?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// The prime field `F_p`, elements stored as canonical residues.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// The default coefficient field of the crate.
    pub const DEFAULT_CHARACTERISTIC: u32 = 101;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=(1 << 31)).contains(&p) || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: Self::DEFAULT_CHARACTERISTIC }
    }
}

impl Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn format(&self, a: &u32) -> String {
        // Symmetric representative reads better for small negatives.
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let (num, den) = split_ratio(s)?;
        let n = self.from_i64(i64::try_from(num.clone() % BigInt::from(self.p)).unwrap_or(0));
        let d = self.from_i64(i64::try_from(den.clone() % BigInt::from(self.p)).unwrap_or(0));
        self.div(&n, &d)
            .ok_or_else(|| Error::Arithmetic(format!("denominator of {s} vanishes in {}", self.name())))
    }
}

/// Field context for an exact `num-traits` scalar such as [`BigRational`].
pub struct Scalars<T>(PhantomData<fn() -> T>);

impl<T> Scalars<T> {
    pub fn new() -> Self {
        Scalars(PhantomData)
    }
}

impl<T> Default for Scalars<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Scalars<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Scalars<T> {}

impl<T> Debug for Scalars<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalars<{}>", std::any::type_name::<T>())
    }
}

/// Exact scalar types usable through [`Scalars`].
pub trait ExactScalar:
    Num + Signed + FromPrimitive + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    fn parse_literal(s: &str) -> Result<Self>;
}

impl ExactScalar for BigRational {
    fn parse_literal(s: &str) -> Result<Self> {
        let (num, den) = split_ratio(s)?;
        if den.is_zero() {
            return Err(Error::Arithmetic(format!("zero denominator in {s}")));
        }
        Ok(BigRational::new(num, den))
    }
}

impl<T: ExactScalar> Field for Scalars<T> {
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn from_i64(&self, n: i64) -> T {
        T::from_i64(n).expect("exact scalar holds every i64")
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
    fn format(&self, a: &T) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<T> {
        T::parse_literal(s)
    }
}

fn split_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Arithmetic(format!("malformed coefficient `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => Ok((
            a.trim().parse::<BigInt>().map_err(|_| bad())?,
            b.trim().parse::<BigInt>().map_err(|_| bad())?,
        )),
        None => Ok((s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one())),
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Either supported coefficient field, chosen at runtime (e.g. by a spec file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("F{p}"),
            FieldSpec::Rationals => "Q".to_string(),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(PrimeField::DEFAULT_CHARACTERISTIC)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_round_trip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u32 {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn parses_ratios() {
        let f = PrimeField::default();
        let half = f.parse("1/2").unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert_eq!(f.parse("-3").unwrap(), 98);
        let q = Scalars::<BigRational>::new();
        let x = q.parse("-6/4").unwrap();
        assert_eq!(x, BigRational::new((-3).into(), 2.into()));
        assert!(q.parse("1/0").is_err());
    }
}
