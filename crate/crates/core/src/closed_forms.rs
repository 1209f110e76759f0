//! Explicit formulas for arithmetic-progression boundaries `s_i = c + i·d`.

use num_bigint::BigInt;
use crate::algebra::{binom, Rational, Ring, SigmaPoly, TruncatedSeries};
use crate::error::{Error, Result};

/// `LP_n(c+id) = c/(c+n(d+1))·binom(c+n(d+1), n)`.
pub fn lp_arith_closed(c: u64, d: u64, n: u64) -> Result<BigInt> {
    let top = (c + n * (d + 1)) as i64;
    let value = Rational::new(BigInt::from(c) * binom(top, n as i64), BigInt::from(top));
    if !value.is_integer() {
        return Err(Error::InexactDivision { divisor: top });
    }
    Ok(value.to_integer())
}

/// `Σ_n SP_n(1,1,σ; c+i) zⁿ = (t/z)^c` where `t(0) = 0` solves
/// `t² − (1−σz)t + z = 0`, i.e. `t = ((1−σz) − √((1−σz)² − 4z))/2`.
pub fn sp11_closed_series(c: u64, order: usize) -> Result<TruncatedSeries<SigmaPoly>> {
    let n = order + 1;
    let zero = SigmaPoly::zero();
    let linear = TruncatedSeries::from_poly(vec![SigmaPoly::one(), -SigmaPoly::sigma()], n, &zero);
    let four_z = TruncatedSeries::monomial(SigmaPoly::constant(BigInt::from(4)), 1, n);
    let root = (&(&linear * &linear) - &four_z).sqrt()?;
    let two = BigInt::from(2);
    let t = (&linear - &root).map(|x| x.div_integer(&two).expect("coefficients are even"));
    Ok(t.div_power(1)?.pow(c))
}

/// `T_{n,m}(σ) = Σ_{j ≤ m/b} binom(c+nd−1, j)·binom(c+nd+m−bj, m−bj)·σ^j`,
/// zero for negative `m`.
pub fn t_polynomial(b: u64, c: u64, d: u64, n: u64, m: i64) -> SigmaPoly {
    if m < 0 {
        return SigmaPoly::zero();
    }
    let base = (c + n * d) as i64;
    let b = b as i64;
    let coeffs = (0..=m / b)
        .map(|j| binom(base - 1, j) * binom(base + m - b * j, m - b * j))
        .collect();
    SigmaPoly::new(coeffs)
}

/// `SP_n(1,b,σ; c+id)` by Lagrange inversion:
/// `(c/n)·[T_{n,n−1} + bσ·T_{n,n−b} + (1−b)σ·T_{n,n−b−1}]`.
pub fn sp1b_closed(b: u64, c: u64, d: u64, n: u64) -> Result<SigmaPoly> {
    if n == 0 || b == 0 {
        return Err(Error::PreconditionViolated("need n ≥ 1 and b ≥ 1".into()));
    }
    let t = |m: i64| t_polynomial(b, c, d, n, m);
    let ni = n as i64;
    let bi = b as i64;
    let sigma = SigmaPoly::sigma();
    let sum = t(ni - 1)
        + &(&sigma.scale(&BigInt::from(b)) * &t(ni - bi))
        + &(&sigma.scale(&BigInt::from(1 - bi)) * &t(ni - bi - 1));
    sum.scale(&BigInt::from(c))
        .div_integer(&BigInt::from(n))
        .ok_or(Error::InexactDivision { divisor: ni })
}

/// The `b = 1` case in one sum:
/// `c(σ+1)/n · Σ_j binom(c+nd−1, j)·binom(c+n(d+1)−j−1, n−1−j)·σ^j`.
pub fn sp11_arith_closed(c: u64, d: u64, n: u64) -> Result<SigmaPoly> {
    if n == 0 {
        return Ok(SigmaPoly::one());
    }
    let (ci, di, ni) = (c as i64, d as i64, n as i64);
    let coeffs = (0..ni)
        .map(|j| binom(ci + ni * di - 1, j) * binom(ci + ni * (di + 1) - j - 1, ni - 1 - j))
        .collect();
    let sum = &SigmaPoly::new(coeffs) * &SigmaPoly::from_i64s(&[1, 1]);
    sum.scale(&BigInt::from(c))
        .div_integer(&BigInt::from(n))
        .ok_or(Error::InexactDivision { divisor: ni })
}

/// `Σ_m T_{n,m} t^m` should equal `(1+σt^b)^{c+nd−1}/(1−t)^{c+nd+1}`.
pub fn t_generating_series_holds(b: u64, c: u64, d: u64, n: u64, order: usize) -> bool {
    let zero = SigmaPoly::zero();
    let one = SigmaPoly::one();
    let base = c + n * d;
    let mut num = vec![zero.clone(); b as usize + 1];
    num[0] = one.clone();
    num[b as usize] = num[b as usize].clone() + SigmaPoly::sigma();
    let num = TruncatedSeries::from_poly(num, order, &zero).pow(base - 1);
    let den = TruncatedSeries::from_poly(vec![one.clone(), -one], order, &zero)
        .pow_signed(-(base as i64) - 1)
        .expect("1 − t is a unit");
    let lhs = TruncatedSeries::new((0..=order as i64).map(|m| t_polynomial(b, c, d, n, m)).collect());
    lhs == &num * &den
}
