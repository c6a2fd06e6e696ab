//! Exact scalars: the rationals and prime fields `F_p` with `p < 2^61`.
//!
//! A [`Scalar`] does not know which field it lives in; arithmetic goes
//! through a [`FieldSpec`], which is a small `Copy` context carried by every
//! polynomial and matrix.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible characteristic is strictly below this bound.
pub const MAX_CHARACTERISTIC: u64 = 1 << 61;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A field element. Residues are always kept in `[0, p)` and rationals in
/// lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }
}

impl FieldSpec {
    /// The prime field of characteristic `p`, after checking that `p` is a
    /// prime below `2^61`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let r = (v as i128).rem_euclid(*p as i128) as u64;
                Scalar::Residue(r)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => Scalar::Residue(reduce_bigint(v, *p)),
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(Error::NonInvertible);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(p) => {
                let d = reduce_bigint(den, *p);
                let inv = inv_mod(d, *p).ok_or(Error::NonInvertible)?;
                Ok(Scalar::Residue(mul_mod(reduce_bigint(num, *p), inv, *p)))
            }
        }
    }

    /// Whether `s` is a well-formed element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue(r)) => r < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(add_mod(*x, *y, *p))
            }
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(x.recip()))
                }
            }
            (FieldSpec::Prime(p), Scalar::Residue(x)) => inv_mod(*x, *p).map(Scalar::Residue),
            _ => mismatch(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    /// Parses `"7"`, `"-3"`, or `"3/4"`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::BadScalar(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (parse_int(n).ok_or_else(bad)?, parse_int(d).ok_or_else(bad)?),
            None => (parse_int(text).ok_or_else(bad)?, BigInt::one()),
        };
        if den.sign() != Sign::Plus {
            return Err(bad());
        }
        self.from_ratio(&num, &den)
    }

    /// Field print format: `"3/4"` or `"-2"` over the rationals, the residue in
    /// `[0, p)` over a prime field.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        ScalarDisplay(a).to_string()
    }

    /// Exact reduction of a rational into this field, `None` if the
    /// denominator is not invertible.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<Scalar> {
        self.from_ratio(q.numer(), q.denom()).ok()
    }

    /// The residue in `[0, p)`; panics over the rationals.
    pub fn residue(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Residue(r) => *r,
            Scalar::Rational(_) => mismatch(),
        }
    }

    /// The rational value of an element of `Q`, or `None` over `F_p`.
    pub fn as_rational<'a>(&self, a: &'a Scalar) -> Option<&'a BigRational> {
        match a {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue(r) => i64::try_from(*r).ok(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

struct ScalarDisplay<'a>(&'a Scalar);

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ScalarDisplay(self).fmt(f)
    }
}

#[cold]
fn mismatch() -> ! {
    panic!("scalar does not belong to the field it is combined in")
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below modulus")
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    // Extended Euclid on signed 128-bit values.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sign-aware helper for printing: whether a scalar would print with a
/// leading minus sign.
pub(crate) fn prints_negative(a: &Scalar) -> bool {
    matches!(a, Scalar::Rational(q) if q.is_negative())
}
