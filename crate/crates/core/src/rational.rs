//! Exact rational scalars.
//!
//! [`Rational`] wraps an arbitrary-precision canonical fraction. Every
//! multiplication and division is tallied in a thread-local counter so that
//! callers can measure the arithmetic cost of an algorithm with
//! [`count_multiplications`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

#[inline]
fn tick() {
    MUL_COUNT.with(|c| c.set(c.get() + 1));
}

/// Runs `f` and returns its result together with the number of scalar
/// multiplications and divisions performed on this thread while it ran.
pub fn count_multiplications<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = MUL_COUNT.with(Cell::get);
    let out = f();
    let after = MUL_COUNT.with(Cell::get);
    (out, after - before)
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::Parse(format!("zero denominator in {numer}/{denom}")));
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    /// Integer value.
    pub fn int(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// Builds `numer/denom`; panics on a zero denominator. Meant for literals.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            tick();
            Some(Rational(self.0.recip()))
        }
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Number of decimal digits in numerator plus denominator; a size measure.
    pub fn digits(&self) -> usize {
        self.0.numer().to_string().trim_start_matches('-').len() + self.0.denom().to_string().len()
    }
}

/// The positive scalar `c` that turns `values` into coprime integers.
///
/// `c` is the lcm of the denominators over the gcd of the numerators, so
/// `c·x` is an integer for every `x` and the results share no common
/// factor. Returns one when every value is zero.
pub fn primitive_scale<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for x in values {
        if x.is_zero() {
            continue;
        }
        if !x.0.denom().is_one() {
            lcm = lcm.lcm(x.0.denom());
        }
        gcd = euclid_gcd(gcd, x.0.numer().abs());
    }
    if gcd.is_zero() {
        return Rational::one();
    }
    Rational(BigRational::new(lcm, gcd))
}

/// Euclid's algorithm; fast when one argument is much smaller.
fn euclid_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::int(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p/q"` or `"p"` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
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

// num-rational reduces every result with Stein's gcd, which costs
// quadratic time in the bit length even when a denominator is one. Integer
// operands skip the reduction.

fn add_raw(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn sub_raw(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn mul_raw(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn div_raw(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() && !b.is_zero() {
        let (quot, rem) = a.numer().div_rem(b.numer());
        if rem.is_zero() {
            return BigRational::from_integer(quot);
        }
    }
    a / b
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $raw:ident, $count:expr) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &Rational) -> Rational {
                if $count {
                    tick();
                }
                Rational($raw(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_raw, false);
forward_binop!(Sub, sub, sub_raw, false);
forward_binop!(Mul, mul, mul_raw, true);
forward_binop!(Div, div, div_raw, true);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 = add_raw(&self.0, &rhs.0);
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self += &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 = sub_raw(&self.0, &rhs.0);
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self -= &rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        tick();
        self.0 = mul_raw(&self.0, &rhs.0);
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
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

/// Shorthand for building a rational literal: `q(3)` or `q((-3, 16))`.
pub fn q<T: IntoRational>(value: T) -> Rational {
    value.into_rational()
}

pub trait IntoRational {
    fn into_rational(self) -> Rational;
}

impl IntoRational for i64 {
    fn into_rational(self) -> Rational {
        Rational::int(self)
    }
}

impl IntoRational for i32 {
    fn into_rational(self) -> Rational {
        Rational::int(self.into())
    }
}

impl IntoRational for (i64, i64) {
    fn into_rational(self) -> Rational {
        Rational::frac(self.0, self.1)
    }
}

impl IntoRational for Rational {
    fn into_rational(self) -> Rational {
        self
    }
}

/// Parses a comma- or whitespace-separated list of rational literals.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Formats a list as comma-separated rational literals.
pub fn format_list(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scale_clears_denominators() {
        let v = [q((3, 4)), q(0), q((-9, 2)), q((15, 8))];
        let c = primitive_scale(&v);
        assert_eq!(c, q((8, 3)));
        let scaled: Vec<Rational> = v.iter().map(|x| x * &c).collect();
        assert_eq!(scaled, vec![q(2), q(0), q(-12), q(5)]);
        assert_eq!(primitive_scale(&[q(0), q(0)]), q(1));
    }

    #[test]
    fn canonical_form() {
        let x: Rational = "6/-4".parse().unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!("-3/16".parse::<Rational>().unwrap(), Rational::frac(-3, 16));
        assert_eq!("7".parse::<Rational>().unwrap(), 7);
        assert_eq!(" 0/5 ".parse::<Rational>().unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_bad_literals() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_and_counter() {
        let a = q((1, 4));
        let b = q((-3, 16));
        let (c, muls) = count_multiplications(|| &(&a * &b) / &a + &b);
        assert_eq!(c, q((-3, 8)));
        assert_eq!(muls, 2);
        assert!(q(0).recip().is_none());
        assert_eq!(q((-2, 3)).recip().unwrap(), q((-3, 2)));
    }

    #[test]
    fn list_round_trip() {
        let v = parse_list("0, 0,1/4 -3/16,1/64").unwrap();
        assert_eq!(format_list(&v), "0,0,1/4,-3/16,1/64");
    }
}
