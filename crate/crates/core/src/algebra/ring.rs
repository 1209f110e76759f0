//! The coefficient-ring abstraction shared by every series type.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// An exact commutative ring with unity.
///
/// Constants are produced "like" an existing element so that rings carrying
/// context (the cyclotomic order of a [`CycloNum`](super::CycloNum)) can build
/// them without a separate ring object.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: &BigInt) -> Self;
    fn vanishes(&self) -> bool;
    /// Multiplicative inverse, if `self` is a unit.
    fn inverse(&self) -> Option<Self>;
    /// Exact division by an integer; `None` when the quotient leaves the ring.
    fn div_integer(&self, d: &BigInt) -> Option<Self>;

    fn small_like(&self, n: i64) -> Self {
        self.int_like(&BigInt::from(n))
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / Rational::from_integer(d.clone()))
        }
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn one_like(&self) -> Self {
        BigInt::one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

/// Parses `"p/q"` or `"n"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("3/6"), Some(rational(1, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn integer_division_is_exact_only() {
        let six = BigInt::from(6);
        assert_eq!(six.div_integer(&BigInt::from(3)), Some(BigInt::from(2)));
        assert_eq!(six.div_integer(&BigInt::from(4)), None);
        assert_eq!(int(6).div_integer(&BigInt::from(4)), Some(rational(3, 2)));
    }
}
