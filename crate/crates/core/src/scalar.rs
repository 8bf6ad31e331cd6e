//! Exact scalars: arbitrary-precision rationals and elements of a real
//! quadratic field Q(√d).
//!
//! A [`QuadScalar`] is `rat + coef·√d` with `d` squarefree. Values whose
//! irrational part is zero are normalized to `d = 1`, so a plain rational
//! combines with any field. Arithmetic between two genuinely irrational
//! values from different fields is rejected: the `try_*` methods return
//! [`Error::MixedRadicand`], and the operator impls panic. Comparison is
//! total and exact across fields, because `1, √m, √n` are linearly
//! independent over the rationals for distinct squarefree `m, n`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Splits `n > 0` into `(k, m)` with `n = k²·m` and `m` squarefree.
pub fn split_square(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, m)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    rat: Rational,
    coef: Rational,
    radicand: u64,
}

impl QuadScalar {
    /// `rat + coef·√radicand`; the radicand must be squarefree.
    pub fn new(rat: Rational, coef: Rational, radicand: u64) -> Result<Self> {
        if !is_squarefree(radicand) {
            return Err(Error::NotSquarefree(radicand));
        }
        Ok(Self::normalized(rat, coef, radicand))
    }

    fn normalized(rat: Rational, coef: Rational, radicand: u64) -> Self {
        if coef.is_zero() {
            QuadScalar { rat, coef, radicand: 1 }
        } else if radicand == 1 {
            QuadScalar {
                rat: rat + coef,
                coef: Rational::zero(),
                radicand: 1,
            }
        } else {
            QuadScalar { rat, coef, radicand }
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadScalar {
            rat,
            coef: Rational::zero(),
            radicand: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// Exact square root of a nonnegative integer, `k·√m` with `m` squarefree.
    pub fn sqrt_of(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (k, m) = split_square(n);
        Self::normalized(
            Rational::zero(),
            Rational::from_integer(BigInt::from(k)),
            m,
        )
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irrational_coef(&self) -> &Rational {
        &self.coef
    }

    /// Squarefree radicand; 1 for rational values.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self.as_rational() {
            Some(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    /// Common field of two values, if they share one.
    pub fn context(&self, other: &Self) -> Result<u64> {
        merge_radicands(self.radicand, other.radicand)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.context(other)?;
        Ok(Self::normalized(
            &self.rat + &other.rat,
            &self.coef + &other.coef,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.context(other)?;
        Ok(Self::normalized(
            &self.rat - &other.rat,
            &self.coef - &other.coef,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.context(other)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let rat = &self.rat * &other.rat + &self.coef * &other.coef * dr;
        let coef = &self.rat * &other.coef + &self.coef * &other.rat;
        Ok(Self::normalized(rat, coef, d))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (a - b√d) / (a² - b²d); the norm is nonzero because √d is irrational
        let d = Rational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rat * &self.rat - &self.coef * &self.coef * d;
        Ok(Self::normalized(
            &self.rat / &norm,
            -&self.coef / &norm,
            self.radicand,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.context(other)?;
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(&self.rat * k, &self.coef * k, self.radicand)
    }

    /// Exact sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.rat);
        let sb = rat_sign(&self.coef);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let d = Rational::from_integer(BigInt::from(self.radicand));
        let a2 = &self.rat * &self.rat;
        let b2d = &self.coef * &self.coef * d;
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Greatest integer not above the value, computed without rounding.
    pub fn floor(&self) -> BigInt {
        let base = self.rat.floor().to_integer();
        if self.coef.is_zero() {
            return base;
        }
        let d = Rational::from_integer(BigInt::from(self.radicand));
        let square = &self.coef * &self.coef * d;
        let root_floor: BigInt = Roots::sqrt(&square.floor().to_integer());
        let irr_floor = if self.coef.is_positive() {
            root_floor
        } else {
            let exact = Rational::from_integer(&root_floor * &root_floor) == square;
            if exact {
                -root_floor
            } else {
                -root_floor - 1
            }
        };
        // floor(u) + floor(v) <= floor(u + v) <= floor(u) + floor(v) + 1
        let candidate: BigInt = base + irr_floor;
        let next: BigInt = &candidate + 1u32;
        if (self - &QuadScalar::from_bigint(next.clone())).signum() >= 0 {
            next
        } else {
            candidate
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Lossy conversion; only meant for drawing.
    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.coef.is_zero() {
            return a;
        }
        a + self.coef.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

pub(crate) fn merge_radicands(a: u64, b: u64) -> Result<u64> {
    if a == 1 || a == b {
        Ok(b)
    } else if b == 1 {
        Ok(a)
    } else {
        Err(Error::MixedRadicand(a, b))
    }
}

fn rat_sign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sign of `x - y` where both may live in different quadratic fields.
fn cross_sign(x: &QuadScalar, y: &QuadScalar) -> i32 {
    if let Ok(diff) = x.try_sub(y) {
        return diff.signum();
    }
    // x - y = X - Y with X = (a - c) + b√m in Q(√m) and Y = e√n
    let big_x = QuadScalar::normalized(&x.rat - &y.rat, x.coef.clone(), x.radicand);
    let big_y = QuadScalar::normalized(Rational::zero(), y.coef.clone(), y.radicand);
    let sx = big_x.signum();
    let sy = big_y.signum();
    if sx == 0 {
        return -sy;
    }
    if sx != sy {
        return sx;
    }
    // same sign: compare squares, X² - e²n stays inside Q(√m) and is never zero
    let n = Rational::from_integer(BigInt::from(y.radicand));
    let y2 = QuadScalar::from_rational(&y.coef * &y.coef * n);
    let x2 = big_x.try_mul(&big_x).expect("same field");
    sx * x2.try_sub(&y2).expect("rational operand").signum()
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        cross_sign(self, other).cmp(&0)
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<BigInt> for QuadScalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            rat: -&self.rat,
            coef: -&self.coef,
            radicand: self.radicand,
        }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return fmt_rational(&self.rat, f);
        }
        if !self.rat.is_zero() {
            fmt_rational(&self.rat, f)?;
            if self.coef.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.coef == -Rational::one() {
            write!(f, "-")?;
        } else if !self.coef.is_one() {
            fmt_rational(&self.coef, f)?;
        }
        write!(f, "√{}", self.radicand)
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let r = Rational::from_str(s).map_err(|_| format!("bad rational `{s}`"))?;
    Ok(r)
}

impl FromStr for QuadScalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `p/q+r/s√d`, `r/s√d`, `√d`, with `sqrt` as an
    /// ASCII spelling of `√`.
    fn from_str(text: &str) -> Result<Self> {
        let cleaned: String = text
            .replace("sqrt", "√")
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if cleaned.is_empty() {
            return Err(Error::invalid("empty number"));
        }
        let Some(root_at) = cleaned.find('√') else {
            return parse_rational(&cleaned)
                .map(Self::from_rational)
                .map_err(Error::Invalid);
        };
        // `√3/2` reads as √3 divided by 2
        let tail = &cleaned[root_at + '√'.len_utf8()..];
        let (root_text, divisor) = match tail.split_once('/') {
            Some((r, den)) => (r, parse_rational(den).map_err(Error::Invalid)?),
            None => (tail, Rational::one()),
        };
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let radicand: u64 = root_text
            .parse()
            .map_err(|_| Error::invalid(format!("bad radicand in `{text}`")))?;
        let head = &cleaned[..root_at];
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat_text, coef_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let rat = if rat_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(rat_text).map_err(Error::Invalid)?
        };
        let coef = match coef_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other).map_err(Error::Invalid)?,
        };
        let coef = coef / divisor;
        Ok(QuadScalar::from_rational(rat) + QuadScalar::sqrt_of(radicand).scale(&coef))
    }
}

/// Exact JSON encoding of a rational as a `[numerator, denominator]` pair of
/// decimal strings.
pub mod rational_serde {
    use super::*;

    pub fn encode(r: &Rational) -> (String, String) {
        (r.numer().to_string(), r.denom().to_string())
    }

    pub fn decode(pair: &(String, String)) -> std::result::Result<Rational, String> {
        let n = BigInt::from_str(&pair.0).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(&pair.1).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        encode(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let pair = <(String, String)>::deserialize(d)?;
        decode(&pair).map_err(serde::de::Error::custom)
    }
}

impl Serialize for QuadScalar {
    /// Encoded as the triple `[rational part, coefficient, radicand]`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (
            rational_serde::encode(&self.rat),
            rational_serde::encode(&self.coef),
            self.radicand,
        )
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (rat, coef, radicand) =
            <((String, String), (String, String), u64)>::deserialize(d)?;
        let rat = rational_serde::decode(&rat).map_err(D::Error::custom)?;
        let coef = rational_serde::decode(&coef).map_err(D::Error::custom)?;
        QuadScalar::new(rat, coef, radicand).map_err(D::Error::custom)
    }
}
