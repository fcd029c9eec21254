//! Exact scalars over prime fields GF(p) and over the rationals.
//!
//! A [`Scalar`] always carries its [`FieldSpec`] and is stored in canonical
//! form: a residue in `[0, p)` for prime fields, a reduced fraction with a
//! positive denominator for the rationals. Mixing fields is an error for the
//! checked entry points and a panic for the operator overloads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    /// GF(p); `p` must be a prime below 2^32 so that products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar {
                field: *self,
                value: Value::Residue(v.rem_euclid(*p as i64) as u64),
            },
            FieldSpec::Rational => Scalar {
                field: *self,
                value: Value::Fraction(BigRational::from_integer(BigInt::from(v))),
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Element with residue `r` (reduced mod p). Panics on the rationals.
    pub fn residue(&self, r: u64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar {
                field: *self,
                value: Value::Residue(r % p),
            },
            FieldSpec::Rational => panic!("residue() called on the rationals"),
        }
    }

    /// All elements of a finite field, in residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) => Ok((0..*p).map(|r| self.residue(r)).collect()),
            FieldSpec::Rational => Err(Error::InfiniteField(*self)),
        }
    }

    /// Parses a field element literal: an integer or `a/b`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "scalar",
            detail: s.to_string(),
        };
        match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.from_bigint(&a).checked_div(&self.from_bigint(&b))
            }
            None => {
                let a: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&a))
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                self.residue(r)
            }
            FieldSpec::Rational => Scalar {
                field: *self,
                value: Value::Fraction(BigRational::from_integer(v.clone())),
            },
        }
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        num.checked_div(&den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
            FieldSpec::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `gf(p)` or `q` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(FieldSpec::Rational);
        }
        let inner = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                what: "field spec",
                detail: s.to_string(),
            })?;
        let p: u64 = inner.trim().parse().map_err(|_| Error::Parse {
            what: "field spec",
            detail: s.to_string(),
        })?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Residue(u64),
    Fraction(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Residue(r) => *r == 0,
            Value::Fraction(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Residue(r) => *r == 1,
            Value::Fraction(q) => q.is_one(),
        }
    }

    /// Residue in `[0, p)`; `None` on the rationals.
    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            Value::Fraction(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Residue(_) => None,
            Value::Fraction(q) => Some(q),
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        self.check_same(other)?;
        match op {
            ArithOp::Add => Ok(self.add_unchecked(other)),
            ArithOp::Sub => Ok(self.sub_unchecked(other)),
            ArithOp::Mul => Ok(self.mul_unchecked(other)),
            ArithOp::Div => self.checked_div(other),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Residue(r) => Value::Residue(inv_mod(*r, self.field.characteristic())),
            Value::Fraction(q) => Value::Fraction(q.recip()),
        };
        Ok(Scalar {
            field: self.field,
            value,
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn add_unchecked(&self, o: &Scalar) -> Scalar {
        let value = match (&self.value, &o.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue((a + b) % self.field.characteristic())
            }
            (Value::Fraction(a), Value::Fraction(b)) => Value::Fraction(a + b),
            _ => unreachable!("field checked"),
        };
        Scalar {
            field: self.field,
            value,
        }
    }

    fn sub_unchecked(&self, o: &Scalar) -> Scalar {
        let value = match (&self.value, &o.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue((a + p - b) % p)
            }
            (Value::Fraction(a), Value::Fraction(b)) => Value::Fraction(a - b),
            _ => unreachable!("field checked"),
        };
        Scalar {
            field: self.field,
            value,
        }
    }

    fn mul_unchecked(&self, o: &Scalar) -> Scalar {
        let value = match (&self.value, &o.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(a * b % self.field.characteristic())
            }
            (Value::Fraction(a), Value::Fraction(b)) => Value::Fraction(a * b),
            _ => unreachable!("field checked"),
        };
        Scalar {
            field: self.field,
            value,
        }
    }

    /// Signed rendering: residues above p/2 are shown as negatives.
    pub fn to_signed_string(&self) -> String {
        match &self.value {
            Value::Residue(r) => {
                let p = self.field.characteristic();
                if p > 2 && *r > p / 2 {
                    format!("-{}", p - r)
                } else {
                    r.to_string()
                }
            }
            Value::Fraction(_) => self.to_string(),
        }
    }

    /// True when the canonical rendering starts with a minus sign.
    pub fn is_negative_literal(&self) -> bool {
        match &self.value {
            Value::Residue(_) => false,
            Value::Fraction(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Residue(r) => write!(f, "{r}"),
            Value::Fraction(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                assert_eq!(self.field, rhs.field, "scalar field mismatch");
                self.$imp(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &self.field.zero() - self
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Inverse of `a` modulo the prime `p` (extended Euclid).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticKind {
    /// t² − λ
    MinusLambda,
    /// t² + λt + 1
    LambdaPlusOne,
}

/// Whether the named monic quadratic has no root in the field.
pub fn quadratic_irreducible(spec: FieldSpec, kind: QuadraticKind, lambda: &Scalar) -> bool {
    debug_assert_eq!(lambda.field(), spec);
    match spec {
        FieldSpec::Prime(p) => {
            let l = lambda.residue().unwrap();
            match (kind, p) {
                (_, 2) => {
                    let has_root = (0..2u64).any(|t| eval_quadratic(kind, t, l, 2) == 0);
                    !has_root
                }
                (QuadraticKind::MinusLambda, _) => !is_square_mod(l, p),
                (QuadraticKind::LambdaPlusOne, _) => {
                    let disc = (l * l % p + p - 4 % p) % p;
                    !is_square_mod(disc, p)
                }
            }
        }
        FieldSpec::Rational => {
            let l = lambda.as_rational().unwrap();
            match kind {
                QuadraticKind::MinusLambda => !is_rational_square(l),
                QuadraticKind::LambdaPlusOne => {
                    let disc = l * l - BigRational::from_integer(BigInt::from(4));
                    !is_rational_square(&disc)
                }
            }
        }
    }
}

fn eval_quadratic(kind: QuadraticKind, t: u64, l: u64, p: u64) -> u64 {
    match kind {
        QuadraticKind::MinusLambda => (t * t % p + p - l) % p,
        QuadraticKind::LambdaPlusOne => (t * t + l * t + 1) % p,
    }
}

/// Euler's criterion for odd p; 0 counts as a square.
fn is_square_mod(a: u64, p: u64) -> bool {
    let a = a % p;
    a == 0 || p == 2 || pow_mod(a, (p - 1) / 2, p) == 1
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |v: &BigInt| {
        let r = v.sqrt();
        &r * &r == *v
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

/// Whether t³ − μ has no root in the field.
pub fn cubic_irreducible(spec: FieldSpec, mu: &Scalar) -> bool {
    debug_assert_eq!(mu.field(), spec);
    match spec {
        FieldSpec::Prime(p) => {
            let m = mu.residue().unwrap();
            if m == 0 {
                return false;
            }
            if p % 3 != 1 {
                // cubing is a bijection
                return false;
            }
            pow_mod(m, (p - 1) / 3, p) != 1
        }
        FieldSpec::Rational => {
            let q = mu.as_rational().unwrap();
            let is_cube = |v: &BigInt| {
                let r = v.cbrt();
                &r * &r * &r == *v
            };
            !(is_cube(q.numer()) && is_cube(q.denom()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn arith_examples() {
        let f7 = gf(7);
        let q = f7.from_i64(1).arith(&f7.from_i64(3), ArithOp::Div).unwrap();
        assert_eq!(q, f7.from_i64(5));
        let r = FieldSpec::Rational;
        let s = r
            .from_ratio(1, 2)
            .unwrap()
            .arith(&r.from_ratio(1, 3).unwrap(), ArithOp::Add)
            .unwrap();
        assert_eq!(s, r.from_ratio(5, 6).unwrap());
        assert_eq!(s.to_string(), "5/6");
        let f2 = gf(2);
        assert_eq!(f2.one().arith(&f2.one(), ArithOp::Mul).unwrap(), f2.one());
    }

    #[test]
    fn arith_errors() {
        let f7 = gf(7);
        assert_eq!(
            f7.one().arith(&f7.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            f7.one().arith(&gf(5).one(), ArithOp::Add),
            Err(Error::FieldMismatch(_, _))
        ));
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn field_spec_round_trip() {
        for s in ["gf(2)", "gf(7)", "q"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("gf(4)".parse::<FieldSpec>().is_err());
        assert!("gf7".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn canonical_forms() {
        let r = FieldSpec::Rational;
        assert_eq!(r.from_ratio(2, -4).unwrap(), r.from_ratio(-1, 2).unwrap());
        assert_eq!(r.parse_scalar("-2/4").unwrap().to_string(), "-1/2");
        let f5 = gf(5);
        assert_eq!(f5.from_i64(-1).residue(), Some(4));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let f = gf(p);
            let els = f.elements().unwrap();
            for a in &els {
                if !a.is_zero() {
                    assert!((a * &a.inv().unwrap()).is_one());
                }
                for b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &els {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_examples() {
        let f2 = gf(2);
        assert!(quadratic_irreducible(
            f2,
            QuadraticKind::LambdaPlusOne,
            &f2.one()
        ));
        let f7 = gf(7);
        assert!(quadratic_irreducible(
            f7,
            QuadraticKind::MinusLambda,
            &f7.from_i64(3)
        ));
        let r = FieldSpec::Rational;
        assert!(!quadratic_irreducible(
            r,
            QuadraticKind::MinusLambda,
            &r.from_i64(4)
        ));
        assert!(quadratic_irreducible(
            r,
            QuadraticKind::MinusLambda,
            &r.from_i64(2)
        ));
        assert!(!quadratic_irreducible(
            r,
            QuadraticKind::MinusLambda,
            &r.from_ratio(9, 4).unwrap()
        ));
    }

    #[test]
    fn squares_are_never_irreducible_up_to_13() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = gf(p);
            let els = f.elements().unwrap();
            let squares: Vec<u64> = els.iter().map(|a| (a * a).residue().unwrap()).collect();
            for l in &els {
                let irr = quadratic_irreducible(f, QuadraticKind::MinusLambda, l);
                assert_eq!(irr, !squares.contains(&l.residue().unwrap()), "p={p} l={l}");
                // brute-force oracle for the second family
                let root = els
                    .iter()
                    .any(|t| (&(t * t) + &(l * t) + f.one()).is_zero());
                assert_eq!(
                    quadratic_irreducible(f, QuadraticKind::LambdaPlusOne, l),
                    !root
                );
            }
        }
    }

    #[test]
    fn cubic_examples() {
        let f7 = gf(7);
        assert!(cubic_irreducible(f7, &f7.from_i64(2)));
        let f2 = gf(2);
        assert!(!cubic_irreducible(f2, &f2.one()));
        let r = FieldSpec::Rational;
        assert!(!cubic_irreducible(r, &r.from_i64(8)));
        assert!(!cubic_irreducible(r, &r.from_i64(-27)));
        assert!(cubic_irreducible(r, &r.from_i64(2)));
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = gf(p);
            let els = f.elements().unwrap();
            for m in &els {
                let root = els.iter().any(|t| &(&(t * t) * t) == m);
                assert_eq!(cubic_irreducible(f, m), !root, "p={p} mu={m}");
            }
        }
    }
}
