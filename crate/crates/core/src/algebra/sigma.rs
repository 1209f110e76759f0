//! Polynomials in the diagonal-step weight σ with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{Rational, Ring};

/// Integer polynomial in σ, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SigmaPoly {
    coeffs: Vec<BigInt>,
}

impl SigmaPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·σ^power`
    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The variable σ itself.
    pub fn sigma() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, sigma: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * sigma + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, sigma: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * sigma + c;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at σ = 1.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Debug for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match power {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if power == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;
    fn add(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SigmaPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;
    fn sub(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SigmaPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;
    fn mul(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        if self.is_zero() || rhs.is_zero() {
            return SigmaPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SigmaPoly::new(out)
    }
}

impl Neg for &SigmaPoly {
    type Output = SigmaPoly;
    fn neg(self) -> SigmaPoly {
        SigmaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for SigmaPoly {
    type Output = SigmaPoly;
    fn neg(self) -> SigmaPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<SigmaPoly> for SigmaPoly {
            type Output = SigmaPoly;
            fn $method(self, rhs: SigmaPoly) -> SigmaPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a SigmaPoly> for SigmaPoly {
            type Output = SigmaPoly;
            fn $method(self, rhs: &'a SigmaPoly) -> SigmaPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Ring for SigmaPoly {
    fn zero_like(&self) -> Self {
        SigmaPoly::zero()
    }

    fn one_like(&self) -> Self {
        SigmaPoly::one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        SigmaPoly::constant(n.clone())
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] if c.abs().is_one() => Some(self.clone()),
            _ => None,
        }
    }

    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.div_integer(d)?);
        }
        Some(SigmaPoly::new(out))
    }
}
