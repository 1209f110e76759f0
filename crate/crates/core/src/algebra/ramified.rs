//! Fractional Laurent (Puiseux) series in `u = z^{1/k}` with finite pole order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::{CycloField, CycloNum};
use super::ring::{parse_rational, Rational, Ring};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// `Σ_{e ≥ -p} c_e u^e`, known through `u^order`, where `u^k = z`.
///
/// Coefficients below the stored start are exactly zero; those above the
/// order are unknown. Products track precision through valuations, so a
/// factor of high valuation does not cost absolute precision.
#[derive(Clone, PartialEq)]
pub struct RamifiedSeries<R> {
    ramification: usize,
    start: i64,
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> RamifiedSeries<R> {
    /// Coefficients for `u^start ..= u^{start + len - 1}`.
    pub fn new(ramification: usize, start: i64, coeffs: Vec<R>, zero: R) -> Self {
        assert!(ramification >= 1, "ramification must be positive");
        let mut s = Self {
            ramification,
            start,
            coeffs,
            zero: zero.zero_like(),
        };
        s.normalize();
        s
    }

    /// `c·u^exponent` known through `u^order`.
    pub fn monomial(ramification: usize, c: R, exponent: i64, order: i64) -> Self {
        let zero = c.zero_like();
        if exponent > order {
            return Self::new(ramification, 0, vec![zero.clone(); (order + 1).max(0) as usize], zero);
        }
        let mut coeffs = vec![zero.clone(); (order - exponent + 1) as usize];
        coeffs[0] = c;
        Self::new(ramification, exponent, coeffs, zero)
    }

    pub fn constant(ramification: usize, c: R, order: i64) -> Self {
        Self::monomial(ramification, c, 0, order)
    }

    /// Embeds a power series in `t = z` (not `u`): `t^i ↦ u^{k i}`.
    pub fn from_z_series(ramification: usize, series: &TruncatedSeries<R>) -> Self {
        let k = ramification;
        let zero = series.zero_elem();
        let len = k * (series.order() + 1);
        let mut coeffs = vec![zero.clone(); len];
        for (i, c) in series.coeffs().iter().enumerate() {
            coeffs[k * i] = c.clone();
        }
        Self::new(k, 0, coeffs, zero)
    }

    /// Reads a power series in `u` as a ramified series (`t ↦ u`).
    pub fn from_u_series(ramification: usize, series: &TruncatedSeries<R>) -> Self {
        Self::new(ramification, 0, series.coeffs().to_vec(), series.zero_elem())
    }

    fn normalize(&mut self) {
        if self.start > 0 {
            let mut padded = vec![self.zero.clone(); self.start as usize];
            padded.append(&mut self.coeffs);
            self.coeffs = padded;
            self.start = 0;
        }
        let lead = self
            .coeffs
            .iter()
            .take((-self.start).max(0) as usize)
            .take_while(|c| c.vanishes())
            .count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    pub fn ramification(&self) -> usize {
        self.ramification
    }

    pub fn pole_order(&self) -> i64 {
        -self.start
    }

    /// Highest exponent of `u` whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.start + self.coeffs.len() as i64 - 1
    }

    pub fn zero_elem(&self) -> R {
        self.zero.clone()
    }

    /// Coefficient of `u^e`; `None` beyond the order.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e > self.order() {
            None
        } else if e < self.start {
            Some(self.zero.clone())
        } else {
            Some(self.coeffs[(e - self.start) as usize].clone())
        }
    }

    fn coeff_ref(&self, e: i64) -> Option<&R> {
        if e < self.start || e > self.order() {
            None
        } else {
            Some(&self.coeffs[(e - self.start) as usize])
        }
    }

    /// Exponent of the first known non-zero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.vanishes())
            .map(|i| self.start + i as i64)
    }

    /// The valuation, or `order + 1` when nothing non-zero is known.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.order() + 1)
    }

    pub fn leading_coefficient(&self) -> Option<R> {
        self.valuation().and_then(|v| self.coeff(v))
    }

    /// Exponent/coefficient pairs of the known part.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order(), "cannot raise the order by truncation");
        let len = (order - self.start + 1).max(0) as usize;
        Self::new(
            self.ramification,
            self.start,
            self.coeffs[..len].to_vec(),
            self.zero.clone(),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.ramification,
            self.start,
            self.coeffs.iter().map(|x| x.clone() * c).collect(),
            self.zero.clone(),
        )
    }

    /// Multiplies by `u^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self::new(
            self.ramification,
            self.start + shift,
            self.coeffs.clone(),
            self.zero.clone(),
        )
    }

    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> RamifiedSeries<S> {
        RamifiedSeries::new(
            self.ramification,
            self.start,
            self.coeffs.iter().map(f).collect(),
            zero.zero_like(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::SingularWithinPrecision)?;
        let lead_inv = self.coeff_ref(v).unwrap().inverse().ok_or(Error::NonUnitConstantTerm)?;
        let rel = (self.order() - v) as usize;
        let mut out: Vec<R> = Vec::with_capacity(rel + 1);
        out.push(lead_inv.clone());
        for i in 1..=rel {
            let mut acc = self.zero.clone();
            for j in 1..=i {
                let a = self.coeff_ref(v + j as i64).unwrap();
                if a.vanishes() {
                    continue;
                }
                acc = acc + &(a.clone() * &out[i - j]);
            }
            out.push(-(acc * &lead_inv));
        }
        Ok(Self::new(self.ramification, -v, out, self.zero.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            return Self::constant(self.ramification, self.zero.one_like(), self.order().max(0));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result.unwrap()
    }

    /// `outer(self)` for a power series `outer` in `t`; `self` needs positive valuation.
    pub fn substitute_into(&self, outer: &TruncatedSeries<R>) -> Result<Self> {
        if self.start < 0 || self.coeff(0).is_some_and(|c| !c.vanishes()) {
            return Err(Error::NonzeroInnerConstant);
        }
        let v = self.valuation_bound().max(1);
        let n = outer.order() as i64;
        let target = self.order().min((n + 1) * v - 1);
        let inner = self.truncate(target);
        let mut acc = Self::constant(self.ramification, outer.coeff(outer.order()).clone(), target);
        for c in outer.coeffs()[..outer.order()].iter().rev() {
            acc = &acc * &inner;
            acc = &acc + &Self::constant(self.ramification, c.clone(), target);
        }
        Ok(acc.truncate(target.min(acc.order())))
    }

    /// Coefficients of `z^q = u^{kq}`, failing if any other exponent is non-zero.
    pub fn z_coefficients(&self) -> Result<Vec<R>, i64> {
        let k = self.ramification as i64;
        for (e, c) in self.terms() {
            if (e < 0 || e % k != 0) && !c.vanishes() {
                return Err(e);
            }
        }
        let top = self.order().div_euclid(k);
        Ok((0..=top).map(|q| self.coeff(q * k).unwrap()).collect())
    }
}

impl RamifiedSeries<Rational> {
    /// Substitutes `u ↦ ξ^m u`, taking `c_e` to `ξ^{m e} c_e` in Q(ξ_k).
    pub fn twist(&self, m: i64, field: &CycloField) -> RamifiedSeries<CycloNum> {
        assert_eq!(field.order(), self.ramification, "twist needs the k-th cyclotomic field");
        RamifiedSeries::new(
            self.ramification,
            self.start,
            self.terms()
                .map(|(e, c)| field.xi_pow(m * e).scale(c))
                .collect(),
            field.zero(),
        )
    }

    pub fn embed(&self, field: &CycloField) -> RamifiedSeries<CycloNum> {
        self.twist(0, field)
    }
}

/// Applies the twist rule to `tau` in the cyclotomic field of order `k`.
pub fn ramified_twist(tau: &RamifiedSeries<Rational>, m: i64, k: usize) -> RamifiedSeries<CycloNum> {
    tau.twist(m, &CycloField::new(k))
}

fn check_compatible<R: Ring>(a: &RamifiedSeries<R>, b: &RamifiedSeries<R>) {
    assert_eq!(a.ramification, b.ramification, "mixing ramification indices");
}

impl<'a, R: Ring> Add<&'a RamifiedSeries<R>> for &'a RamifiedSeries<R> {
    type Output = RamifiedSeries<R>;
    fn add(self, rhs: &'a RamifiedSeries<R>) -> RamifiedSeries<R> {
        check_compatible(self, rhs);
        let start = self.start.min(rhs.start);
        let order = self.order().min(rhs.order());
        let coeffs = (start..=order)
            .map(|e| self.coeff(e).unwrap() + &rhs.coeff(e).unwrap())
            .collect();
        RamifiedSeries::new(self.ramification, start, coeffs, self.zero.clone())
    }
}

impl<'a, R: Ring> Sub<&'a RamifiedSeries<R>> for &'a RamifiedSeries<R> {
    type Output = RamifiedSeries<R>;
    fn sub(self, rhs: &'a RamifiedSeries<R>) -> RamifiedSeries<R> {
        self + &(-rhs)
    }
}

impl<'a, R: Ring> Mul<&'a RamifiedSeries<R>> for &'a RamifiedSeries<R> {
    type Output = RamifiedSeries<R>;
    fn mul(self, rhs: &'a RamifiedSeries<R>) -> RamifiedSeries<R> {
        check_compatible(self, rhs);
        let start = self.start + rhs.start;
        let order = (self.valuation_bound() + rhs.order()).min(rhs.valuation_bound() + self.order());
        let len = (order - start + 1).max(0) as usize;
        let mut coeffs = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() || i >= len {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if b.vanishes() {
                    continue;
                }
                let prod = a.clone() * b;
                let slot = &mut coeffs[i + j];
                *slot = std::mem::replace(slot, prod.zero_like()) + &prod;
            }
        }
        RamifiedSeries::new(self.ramification, start, coeffs, self.zero.clone())
    }
}

impl<R: Ring> Neg for &RamifiedSeries<R> {
    type Output = RamifiedSeries<R>;
    fn neg(self) -> RamifiedSeries<R> {
        RamifiedSeries {
            ramification: self.ramification,
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            zero: self.zero.clone(),
        }
    }
}

impl<R: Ring> fmt::Debug for RamifiedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RamifiedSeries")
            .field("ramification", &self.ramification)
            .field("start", &self.start)
            .field("order", &self.order())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct RamifiedJson {
    ramification: usize,
    pole_order: i64,
    coefficients: Vec<String>,
}

impl Serialize for RamifiedSeries<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RamifiedJson {
            ramification: self.ramification,
            pole_order: self.pole_order(),
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RamifiedSeries<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RamifiedJson::deserialize(deserializer)?;
        if raw.ramification == 0 || raw.pole_order < 0 {
            return Err(D::Error::custom("ramification must be positive and pole order non-negative"));
        }
        let coeffs = raw
            .coefficients
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RamifiedSeries::new(
            raw.ramification,
            -raw.pole_order,
            coeffs,
            Rational::default(),
        ))
    }
}
