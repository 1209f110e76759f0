//! Formal power series truncated at an explicit order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::{parse_rational, Rational, Ring};
use crate::error::{Error, Result};

/// Power series `Σ c_i t^i` whose coefficients are known for `i ≤ order`.
///
/// Terms beyond the order are unknown, not zero.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// The order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Pads with zeros (or truncates) so the series has the given order.
    pub fn from_poly(mut coeffs: Vec<R>, order: usize, zero: &R) -> Self {
        coeffs.resize(order + 1, zero.zero_like());
        Self { coeffs }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        Self::from_poly(vec![c], order, &zero)
    }

    /// `c·t^power` known to `order`.
    pub fn monomial(c: R, power: usize, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); power.min(order + 1)];
        if power <= order {
            coeffs.push(c);
        }
        Self::from_poly(coeffs, order, &zero)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn zero_elem(&self) -> R {
        self.coeffs[0].zero_like()
    }

    pub fn one_elem(&self) -> R {
        self.coeffs[0].one_like()
    }

    /// Forgets every coefficient past `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order by truncation");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Index of the first known non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.vanishes())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplies by `t^shift`; the order grows accordingly.
    pub fn mul_power(&self, shift: usize) -> Self {
        let mut coeffs = vec![self.zero_elem(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `t^shift`, which must divide the known part.
    pub fn div_power(&self, shift: usize) -> Result<Self> {
        if shift > self.order() {
            return Err(Error::InsufficientOrder {
                needed: shift,
                have: self.order(),
            });
        }
        if self.coeffs[..shift].iter().any(|c| !c.vanishes()) {
            return Err(Error::ValuationTooLow { needed: shift });
        }
        Ok(Self {
            coeffs: self.coeffs[shift..].to_vec(),
        })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse().ok_or(Error::NonUnitConstantTerm)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for i in 1..=n {
            let mut acc = self.zero_elem();
            for j in 1..=i {
                if self.coeffs[j].vanishes() {
                    continue;
                }
                acc = acc + &(self.coeffs[j].clone() * &out[i - j]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].vanishes() {
            return Err(Error::NonzeroInnerConstant);
        }
        let inner_order = inner.order();
        let v = inner.valuation().unwrap_or(inner_order + 1);
        // terms past our own order contribute from t^{(N+1)v} on
        let target = inner_order.min((self.order() + 1) * v - 1);
        let inner = inner.truncate(target);
        let mut acc = TruncatedSeries::constant(self.coeffs[self.order()].clone(), target);
        for c in self.coeffs[..self.order()].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c;
        }
        Ok(acc)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs[0] != self.one_elem() {
            return Err(Error::BadConstantTerm);
        }
        let two = BigInt::from(2);
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(self.one_elem());
        for i in 1..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..i {
                acc = acc - &(out[j].clone() * &out[i - j]);
            }
            out.push(
                acc.div_integer(&two)
                    .ok_or(Error::InexactDivision { divisor: 2 })?,
            );
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = TruncatedSeries::constant(self.one_elem(), self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power, inverting first for negative exponents.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }
}

impl<'a, R: Ring> Add<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn add(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl<'a, R: Ring> Sub<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn sub(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - &rhs.coeffs[i])
                .collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl<'a, R: Ring> Mul<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn mul(self, rhs: &'a TruncatedSeries<R>) -> TruncatedSeries<R> {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![self.zero_elem(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.vanishes() {
                    continue;
                }
                let prod = a.clone() * b;
                let slot = &mut coeffs[i + j];
                *slot = std::mem::replace(slot, prod.zero_like()) + &prod;
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl<R: Ring> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl Serialize for TruncatedSeries<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(D::Error::custom("empty coefficient list"));
        }
        raw.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(TruncatedSeries::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rational};
    use crate::algebra::SigmaPoly;

    fn q(v: &[i64]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(v.iter().map(|&x| int(x)).collect())
    }

    fn geometric(order: usize) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(vec![int(1); order + 1])
    }

    #[test]
    fn products() {
        let p = &q(&[1, 1, 0]) * &q(&[1, -1, 0]);
        assert_eq!(p, q(&[1, 0, -1]));
        let one = &geometric(4) * &q(&[1, -1, 0, 0, 0]);
        assert_eq!(one, q(&[1, 0, 0, 0, 0]));
        let catalan = q(&[1, 1, 2, 5]);
        assert_eq!(&catalan * &catalan, q(&[1, 2, 5, 14]));
    }

    #[test]
    fn product_order_is_minimum() {
        assert_eq!((&q(&[1, 2, 3]) * &q(&[1, 1])).order(), 1);
    }

    #[test]
    fn inverses() {
        assert_eq!(q(&[1, -1, 0, 0]).invert().unwrap(), geometric(3));
        let s = SigmaPoly::sigma();
        let one_plus = TruncatedSeries::from_poly(
            vec![SigmaPoly::one(), s.clone()],
            3,
            &SigmaPoly::zero(),
        );
        let inv = one_plus.invert().unwrap();
        let expect: Vec<SigmaPoly> = (0..4)
            .map(|i| SigmaPoly::monomial(BigInt::from(if i % 2 == 0 { 1 } else { -1 }), i))
            .collect();
        assert_eq!(inv.coeffs(), expect.as_slice());
        assert_eq!(q(&[0, 1, 0]).invert(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn compositions() {
        let sq = q(&[0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(geometric(6).compose(&sq).unwrap(), q(&[1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(
            geometric(3).compose(&q(&[1, 1, 0, 0])),
            Err(Error::NonzeroInnerConstant)
        );
    }

    #[test]
    fn composition_order_respects_outer_truncation() {
        // outer known to t^2, inner of valuation 2: result good through t^5
        let r = q(&[1, 1, 1]).compose(&q(&[0, 0, 1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(r.order(), 5);
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(&[1, -4, 0, 0]).sqrt().unwrap(), q(&[1, -2, -2, -4]));
        assert_eq!(q(&[1, 0, 0]).sqrt().unwrap(), q(&[1, 0, 0]));
        assert_eq!(q(&[1, 2, 1, 0]).sqrt().unwrap(), q(&[1, 1, 0, 0]));
        assert_eq!(q(&[4, 1]).sqrt(), Err(Error::BadConstantTerm));
        let half = TruncatedSeries::new(vec![int(1), int(1)]).sqrt().unwrap();
        assert_eq!(half.coeff(1), &rational(1, 2));
    }

    #[test]
    fn power_shift_round_trip() {
        let a = q(&[1, 3, 2]);
        let shifted = a.mul_power(2);
        assert_eq!(shifted.order(), 4);
        assert_eq!(shifted.div_power(2).unwrap(), a);
        assert_eq!(a.div_power(1), Err(Error::ValuationTooLow { needed: 1 }));
    }

    #[test]
    fn json_round_trip() {
        let a = TruncatedSeries::new(vec![rational(1, 2), int(-3), int(0)]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"["1/2","-3","0"]"#);
        let back: TruncatedSeries<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
