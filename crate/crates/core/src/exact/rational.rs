//! Exact rationals and the coefficient trait shared by matrices and series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::InvalidInput(format!("{msg}: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("malformed rational numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("malformed rational denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` (or `p` for integers) rendering.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Ring operations needed by [`Mat2`](super::Mat2) and
/// [`TruncLaurent`](super::TruncLaurent). Implemented by [`Rational`],
/// [`MPoly`](super::MPoly) and the surd elements used for orbit representatives.
///
/// The binary operations panic when the operands live in incompatible rings
/// (e.g. polynomials over different variable lists); fallible variants are
/// provided on the concrete types.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    /// Additive identity in the same ring as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity in the same ring as `self`.
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(factorial(0), int(1));
    }
}
