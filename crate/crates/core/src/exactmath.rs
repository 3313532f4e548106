//! Exact rational scalars and the combinatorial functions built on them.
//!
//! Everything here is exact: [`Rational`] wraps an arbitrary-precision
//! fraction kept in lowest terms, and the integer-valued helpers
//! ([`binomial`], [`pochhammer`]) return [`BigInt`].

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact fraction of arbitrary-precision integers, always in lowest terms
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Builds `numer/denom` from machine integers. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom).expect("zero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    /// Lossy conversion, for plotting and floating-point smoke tests only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = self.0.numer().abs() * &scale * 2u32 + self.0.denom();
        let rounded = scaled.div_floor(&(self.0.denom() * 2u32));
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let negative = self.0.is_negative() && !rounded.is_zero();
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<u32> for Rational {
    fn from(value: u32) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, plain integers, and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::ParseRational(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(p, q).map_err(|_| bad());
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |t: &str| t.bytes().all(|c| c.is_ascii_digit());
            if !all_digits(int_digits)
                || !all_digits(frac_part)
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut numer: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| bad())?
            };
            if negative {
                numer = -numer;
            }
            let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
            return Rational::new(numer, denom).map_err(|_| bad());
        }
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the underlying BigRational; use
// `checked_div` where the divisor is data-dependent.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

/// `C(n, k)`, with the convention `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeUpperIndex(n));
    }
    Ok(binom(n, k))
}

/// Infallible binomial for call sites whose upper index is known to be
/// nonnegative; a negative upper index yields 0 like an out-of-range lower one.
pub(crate) fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Rising factorial `(a)_r = a (a+1) ... (a+r-1)`.
pub fn pochhammer(a: i64, r: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..r as i64 {
        let factor = a + i;
        if factor == 0 {
            return BigInt::zero();
        }
        acc *= factor;
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

static HARMONIC_CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// The harmonic number `H_k = 1 + 1/2 + ... + 1/k`, with `H_0 = 0`.
///
/// Values are memoized in a process-wide cache: reads are concurrent and
/// extension is serialized behind the write lock.
pub fn harmonic(k: u32) -> Rational {
    let idx = k as usize;
    {
        let cache = HARMONIC_CACHE.read().unwrap_or_else(|e| e.into_inner());
        if let Some(h) = cache.get(idx) {
            return h.clone();
        }
    }
    let mut cache = HARMONIC_CACHE.write().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::zero());
    }
    while cache.len() <= idx {
        let i = cache.len() as i64;
        let next = cache.last().expect("nonempty") + Rational::frac(1, i);
        cache.push(next);
    }
    cache[idx].clone()
}

/// `H_1, ..., H_m` as a vector (index 0 holds `H_1`).
pub fn harmonic_prefix(m: u32) -> Vec<Rational> {
    (1..=m).map(harmonic).collect()
}

/// True iff `seq`, read as `H_1..H_m` with `H_0 = 0` prepended, has positive
/// nonincreasing differences.
pub fn validate_concave(seq: &[Rational]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut prev_value = Rational::zero();
    let mut prev_step: Option<Rational> = None;
    for value in seq {
        let step = value - &prev_value;
        if !step.is_positive() {
            return false;
        }
        if let Some(p) = &prev_step {
            if step > *p {
                return false;
            }
        }
        prev_value = value.clone();
        prev_step = Some(step);
    }
    true
}

/// A concave increasing sequence `H_1..H_m`; `H_0 = 0` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveSequence {
    values: Vec<Rational>,
}

impl ConcaveSequence {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if !validate_concave(&values) {
            return Err(Error::NotConcave);
        }
        Ok(ConcaveSequence { values })
    }

    pub fn harmonic(m: u32) -> Self {
        ConcaveSequence {
            values: harmonic_prefix(m.max(1)),
        }
    }

    /// Random concave increasing sequence of length `m`: increments `c/1000`
    /// with `c` uniform in `1..=1000`, sorted nonincreasing, then prefix-summed.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Self {
        let mut steps: Vec<i64> = (0..m.max(1)).map(|_| rng.gen_range(1..=1000)).collect();
        steps.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0i64;
        let values = steps
            .into_iter()
            .map(|c| {
                acc += c;
                Rational::frac(acc, 1000)
            })
            .collect();
        ConcaveSequence { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `H_k`, with `H_0 = 0`. Panics if `k > len()`.
    pub fn get(&self, k: usize) -> Rational {
        if k == 0 {
            Rational::zero()
        } else {
            self.values[k - 1].clone()
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Arbitrary positive sequence of length `m` with entries `c/1000`,
/// `c` uniform in `1..=5000`. Not concave in general.
pub fn random_positive_sequence<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<Rational> {
    (0..m)
        .map(|_| Rational::frac(rng.gen_range(1..=5000), 1000))
        .collect()
}
