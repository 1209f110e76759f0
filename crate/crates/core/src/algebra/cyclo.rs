//! Elements of the cyclotomic field Q(ξ) = Q[x]/Φ_k, ξ a primitive k-th root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg;
use super::ring::{Rational, Ring};

/// The k-th cyclotomic polynomial, integer coefficients lowest degree first.
pub fn cyclotomic_modulus(k: usize) -> Vec<BigInt> {
    assert!(k >= 1, "cyclotomic order must be positive");
    // x^k - 1
    let mut num = vec![BigInt::zero(); k + 1];
    num[0] = -BigInt::one();
    num[k] = BigInt::one();
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_modulus(d));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Context for Q[x]/Φ_k: the order k and its (monic) modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloField {
    order: usize,
    modulus: Arc<Vec<BigInt>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl CycloField {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            modulus: Arc::new(cyclotomic_modulus(order)),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree of Φ_k, i.e. Euler's totient of k.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn element(&self, residue: Vec<Rational>) -> CycloNum {
        CycloNum {
            field: self.clone(),
            residue: self.reduce(residue),
        }
    }

    pub fn from_rational(&self, r: Rational) -> CycloNum {
        self.element(vec![r])
    }

    pub fn zero(&self) -> CycloNum {
        self.element(Vec::new())
    }

    pub fn one(&self) -> CycloNum {
        self.from_rational(Rational::one())
    }

    /// ξ^e for any integer exponent.
    pub fn xi_pow(&self, e: i64) -> CycloNum {
        let e = e.rem_euclid(self.order as i64) as usize;
        let mut residue = vec![Rational::zero(); e + 1];
        residue[e] = Rational::one();
        self.element(residue)
    }

    pub fn xi(&self) -> CycloNum {
        self.xi_pow(1)
    }

    fn reduce(&self, mut residue: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        for top in (n..residue.len()).rev() {
            let c = std::mem::take(&mut residue[top]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in self.modulus.iter().enumerate().take(n) {
                if !m.is_zero() {
                    residue[top - n + j] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
        residue.truncate(n);
        while residue.last().is_some_and(Zero::is_zero) {
            residue.pop();
        }
        residue
    }
}

/// An element of Q[x]/Φ_k, stored as its reduced residue.
#[derive(Clone)]
pub struct CycloNum {
    field: CycloField,
    residue: Vec<Rational>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.residue == other.residue
    }
}

impl CycloNum {
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn residue(&self) -> &[Rational] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }

    /// Rational iff the residue has degree at most zero.
    pub fn is_rational(&self) -> bool {
        self.residue.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.residue.as_slice() {
            [] => Some(Rational::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    fn coeff(&self, i: usize) -> Rational {
        self.residue.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing cyclotomic fields of different order"
        );
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.field
            .element(self.residue.iter().map(|c| c * r).collect())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residue.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .residue
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*xi"),
                _ => format!("({c})*xi^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        self.check_same(rhs);
        let n = self.residue.len().max(rhs.residue.len());
        self.field
            .element((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        self.check_same(rhs);
        let n = self.residue.len().max(rhs.residue.len());
        self.field
            .element((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        self.check_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let mut out = vec![Rational::zero(); self.residue.len() + rhs.residue.len() - 1];
        for (i, a) in self.residue.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.residue.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.field.element(out)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            residue: self.residue.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Ring for CycloNum {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn int_like(&self, n: &BigInt) -> Self {
        self.field.from_rational(Rational::from_integer(n.clone()))
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // column i of the multiplication matrix is self·x^i reduced
        let n = self.field.degree();
        let columns: Vec<CycloNum> = (0..n)
            .map(|i| self * &self.field.xi_pow(i as i64))
            .collect();
        let matrix: Vec<Vec<Rational>> = (0..n)
            .map(|r| columns.iter().map(|c| c.coeff(r)).collect())
            .collect();
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        linalg::solve(&matrix, &rhs).map(|v| self.field.element(v))
    }

    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let d = Rational::from_integer(d.clone());
        Some(self.field.element(self.residue.iter().map(|c| c / &d).collect()))
    }
}
