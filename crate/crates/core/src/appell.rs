//! Triangular recursions for the counts and the Appell relations behind them.
//!
//! For a boundary `s`, the counts `ℓ_n` satisfy `Σ ℓ_n tⁿ φ(t)^{s_n} = Ψ(t)`.
//! Lattice paths have `φ = 1−t`; `(a,b)`-paths have `φ = (1−t)·F(t)` with
//! `F = f(−(1−t)^{a−1} t^b σ)` and `f` the Gould series. In both cases `Ψ = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binom, Rational, Ring, SigmaPoly, TruncatedSeries};
use crate::boundary::{Boundary, PathFamily, StepShape};
use crate::error::{Error, Result};
use crate::oracle::{CountKind, CountTable};

/// `LP_0..LP_N` from `Σ_{m≤n} (−1)^m LP_m binom(s_m, n−m) = 0` for `n ≥ 1`.
pub fn lp_recursion(boundary: &Boundary, max_n: usize) -> CountTable<BigInt> {
    let s = boundary.terms(max_n + 1);
    let mut values: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        for (m, lp) in values.iter().enumerate() {
            let term = lp * binom(s[m] as i64, (n - m) as i64);
            if m % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        values.push(if n % 2 == 1 { acc } else { -acc });
    }
    CountTable { kind: CountKind::Lattice, boundary: boundary.clone(), values }
}

/// Column kernel of the `(a,b)` recursion:
/// `Σ_j (−1)^{k−j(b−1)} binom(s+ja, k−j(b−1)) binom(k−j(b−1), j) σ^j`.
pub fn sp_kernel(shape: StepShape, k: usize, s: u64) -> SigmaPoly {
    let (a, b) = (shape.a as i64, shape.b as i64);
    let k = k as i64;
    let mut coeffs = Vec::new();
    let mut j = 0;
    while j * b <= k {
        let m = k - j * (b - 1);
        let mut c = binom(s as i64 + j * a, m) * binom(m, j);
        if m % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
        j += 1;
    }
    SigmaPoly::new(coeffs)
}

/// `SP_0..SP_N` with symbolic σ from
/// `Σ_{m≤n} SP_m·K(n−m, s_m) = K(n, 0)`.
pub fn sp_recursion(boundary: &Boundary, shape: StepShape, max_n: usize) -> Result<CountTable<SigmaPoly>> {
    if shape.b == 0 {
        return Err(Error::UnsupportedShape { a: shape.a, b: shape.b });
    }
    boundary.slope_condition(shape).into_result()?;
    let s = boundary.terms(max_n + 1);
    let mut values: Vec<SigmaPoly> = vec![SigmaPoly::one()];
    for n in 1..=max_n {
        let mut acc = sp_kernel(shape, n, 0);
        for (m, sp) in values.iter().enumerate() {
            acc = acc - &(sp * &sp_kernel(shape, n - m, s[m]));
        }
        values.push(acc);
    }
    Ok(CountTable { kind: CountKind::AbPath(shape), boundary: boundary.clone(), values })
}

/// `1/(am+1)·binom(am+1, m)` for `m = 0..=N`.
pub fn gould_coefficients(a: u64, max_n: usize) -> Vec<BigInt> {
    (0..=max_n as i64)
        .map(|m| {
            let top = a as i64 * m + 1;
            binom(top, m) / BigInt::from(top)
        })
        .collect()
}

/// The power series `f` with `f − 1 = z·f^a`.
pub fn gould_f(a: u64, order: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::new(
        gould_coefficients(a, order)
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    )
}

/// Checks `Σ_j binom(s+aj, j) z^j = f^{s+1}/(a+(1−a)f)` through `z^order`.
pub fn gould_identity_holds(a: u64, s: u64, order: usize) -> bool {
    let lhs = TruncatedSeries::new(
        (0..=order as i64)
            .map(|j| Rational::from_integer(binom(s as i64 + a as i64 * j, j)))
            .collect(),
    );
    let f = gould_f(a, order);
    let one = Rational::one();
    let denom = &TruncatedSeries::constant(one.small_like(a as i64), order)
        + &f.scale(&one.small_like(1 - a as i64));
    let Ok(inv) = denom.invert() else {
        return false;
    };
    lhs == &f.pow(s + 1) * &inv
}

fn one_minus_t<R: Ring>(one: &R, order: usize) -> TruncatedSeries<R> {
    let mut coeffs = vec![one.clone(), -one.clone()];
    coeffs.truncate(order + 1);
    TruncatedSeries::from_poly(coeffs, order, &one.zero_like())
}

/// `F(t) = f(−(1−t)^{a−1} t^b σ)` with symbolic σ.
pub fn capital_f(shape: StepShape, order: usize) -> Result<TruncatedSeries<SigmaPoly>> {
    if shape.b == 0 {
        return Err(Error::UnsupportedShape { a: shape.a, b: shape.b });
    }
    let one = SigmaPoly::one();
    let base = one_minus_t(&one, order).pow_signed(shape.a as i64 - 1)?;
    let inner = base
        .mul_power(shape.b as usize)
        .truncate(order)
        .scale(&-SigmaPoly::sigma());
    let f = TruncatedSeries::new(
        gould_coefficients(shape.a, order)
            .into_iter()
            .map(SigmaPoly::constant)
            .collect(),
    );
    f.compose(&inner)
}

/// `φ`, `Ψ` and the boundary for one Appell relation.
#[derive(Debug, Clone)]
pub struct AppellData<R: Ring> {
    pub phi: TruncatedSeries<R>,
    pub psi: TruncatedSeries<R>,
    pub boundary: Boundary,
}

/// Builds `φ` and `Ψ` to the given order, σ kept symbolic.
pub fn appell_data(boundary: &Boundary, family: PathFamily, order: usize) -> Result<AppellData<SigmaPoly>> {
    let one = SigmaPoly::one();
    let base = one_minus_t(&one, order);
    let phi = match family {
        PathFamily::Lattice => base,
        PathFamily::Diagonal(shape) => {
            boundary.slope_condition(shape).into_result()?;
            &base * &capital_f(shape, order)?
        }
    };
    Ok(AppellData {
        phi,
        psi: TruncatedSeries::constant(one, order),
        boundary: boundary.clone(),
    })
}

impl AppellData<SigmaPoly> {
    /// Substitutes a rational value for σ.
    pub fn specialize(&self, sigma: &Rational) -> AppellData<Rational> {
        AppellData {
            phi: self.phi.map(|c| c.eval(sigma)),
            psi: self.psi.map(|c| c.eval(sigma)),
            boundary: self.boundary.clone(),
        }
    }
}

impl<R: Ring> AppellData<R> {
    pub fn order(&self) -> usize {
        self.phi.order().min(self.psi.order())
    }

    /// Right side once the prefix is moved over:
    /// `Ψ′ = (Ψ − Σ_{i<r} c_i t^i φ^{a_i}) / (t^r φ^p)`, where `c_i` are the
    /// first `r` counts and `p = a_{r−1}`. What remains is
    /// `Σ_q Σ_j ℓ_{r+qk+j} t^j φ^{b_j} (t^k φ^l)^q`.
    pub fn reduced_rhs(&self, prefix_counts: &[R]) -> Result<TruncatedSeries<R>> {
        let prefix = self.boundary.prefix();
        let r = prefix.len();
        if prefix_counts.len() < r {
            return Err(Error::InsufficientOrder { needed: r, have: prefix_counts.len() });
        }
        let mut rest = self.psi.truncate(self.order());
        for (i, (&ai, ci)) in prefix.iter().zip(prefix_counts).enumerate() {
            let term = self.phi.pow(ai).mul_power(i).truncate(self.order()).scale(ci);
            rest = &rest - &term;
        }
        let rest = rest.div_power(r)?;
        let scale = self.phi.truncate(rest.order()).pow(self.boundary.offset()).invert()?;
        Ok(&rest * &scale)
    }

    /// First order `n ≤ N` at which `Σ_{m≤N} ℓ_m t^m φ^{s_m} − Ψ` is non-zero.
    pub fn first_residual(&self, counts: &[R], max_n: usize) -> Option<usize> {
        let s = self.boundary.terms(max_n + 1);
        let order = max_n.min(self.order());
        let phi = self.phi.truncate(order);
        let mut acc = self.psi.truncate(order).scale(&-self.psi.one_elem());
        let mut power = TruncatedSeries::constant(self.phi.one_elem(), order);
        let mut exponent = 0;
        for (m, c) in counts.iter().enumerate().take(order + 1) {
            power = &power * &phi.pow(s[m] - exponent);
            exponent = s[m];
            acc = &acc + &power.mul_power(m).truncate(order).scale(c);
        }
        acc.valuation()
    }
}

/// Verifies the Appell relation for `counts` through `t^N` and returns `N`.
pub fn appell_residual(boundary: &Boundary, family: PathFamily, counts: &[SigmaPoly], max_n: usize) -> Result<usize> {
    if counts.len() <= max_n {
        return Err(Error::InsufficientOrder { needed: max_n + 1, have: counts.len() });
    }
    let data = appell_data(boundary, family, max_n)?;
    match data.first_residual(counts, max_n) {
        None => Ok(max_n),
        Some(order) => Err(Error::ResidualNonzero { order }),
    }
}

/// `SP_n(1,1,−1; s) = 0` for `1 ≤ n ≤ N`.
pub fn parity_check(boundary: &Boundary, max_n: usize) -> Result<bool> {
    let table = sp_recursion(boundary, StepShape::new(1, 1), max_n)?;
    let minus_one = BigInt::from(-1);
    Ok(table.values[1..].iter().all(|p| p.eval_int(&minus_one).is_zero()))
}

/// `P_0..P_N` from `P_N = −Σ_{n<N} binom(N,n) P_n (−s_n)^{N−n}`.
pub fn parking_recursion(boundary: &Boundary, max_n: usize) -> CountTable<BigInt> {
    let s = boundary.terms(max_n + 1);
    let mut values: Vec<BigInt> = vec![BigInt::one()];
    for big_n in 1..=max_n {
        let mut acc = BigInt::zero();
        for (n, p) in values.iter().enumerate() {
            let power = num_traits::pow(-BigInt::from(s[n]), big_n - n);
            acc += binom(big_n as i64, n as i64) * p * power;
        }
        values.push(-acc);
    }
    CountTable { kind: CountKind::Parking, boundary: boundary.clone(), values }
}

/// Lifts integer counts into constant σ-polynomials.
pub fn lift_counts(values: &[BigInt]) -> Vec<SigmaPoly> {
    values.iter().cloned().map(SigmaPoly::constant).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lattice_recursion() {
        let stair = Boundary::staircase(1, 1).unwrap();
        assert_eq!(lp_recursion(&stair, 5).values, ints(&[1, 1, 2, 5, 14, 42]));
        let tennis = Boundary::tennis(2, 2).unwrap();
        assert_eq!(lp_recursion(&tennis, 4).values, ints(&[1, 1, 3, 6, 22]));
        let flat = Boundary::arithmetic(3, 0).unwrap();
        assert_eq!(lp_recursion(&flat, 3).values, oracle::lp_table_dp(&flat, 3).values);
    }

    #[test]
    fn schroeder_recursion() {
        let stair = Boundary::staircase(1, 1).unwrap();
        let v = sp_recursion(&stair, StepShape::new(1, 1), 2).unwrap().values;
        assert_eq!(v[1], SigmaPoly::from_i64s(&[1, 1]));
        assert_eq!(v[2], SigmaPoly::from_i64s(&[2, 3, 1]));
        let two = Boundary::staircase(2, 1).unwrap();
        let shape = StepShape::new(1, 2);
        assert_eq!(
            sp_recursion(&two, shape, 8).unwrap().values,
            oracle::sp_table_dp(&two, shape, 8).unwrap().values
        );
    }

    #[test]
    fn gould() {
        let c: Vec<i64> = vec![1, 1, 2, 5, 14];
        assert_eq!(gould_coefficients(2, 4), ints(&c));
        assert_eq!(gould_coefficients(0, 3), ints(&[1, 1, 0, 0]));
        assert_eq!(gould_coefficients(1, 3), ints(&[1, 1, 1, 1]));
        for a in 0..=4 {
            for s in 0..=5 {
                assert!(gould_identity_holds(a, s, 15), "a={a} s={s}");
            }
        }
    }

    #[test]
    fn capital_f_examples() {
        let f = capital_f(StepShape::new(1, 1), 6).unwrap();
        let expect = &TruncatedSeries::constant(SigmaPoly::one(), 6)
            + &TruncatedSeries::monomial(SigmaPoly::sigma(), 1, 6);
        assert_eq!(f, expect.invert().unwrap());
        let f2 = capital_f(StepShape::new(1, 3), 8).unwrap();
        let expect2 = &TruncatedSeries::constant(SigmaPoly::one(), 8)
            + &TruncatedSeries::monomial(SigmaPoly::sigma(), 3, 8);
        assert_eq!(f2, expect2.invert().unwrap());
        let zero = Rational::zero();
        let at0 = capital_f(StepShape::new(3, 2), 6).unwrap().map(|c| c.eval(&zero));
        assert_eq!(at0, TruncatedSeries::constant(Rational::one(), 6));
    }

    #[test]
    fn schroeder_phi_closed_form() {
        // (1−t)^s (1+σt)^{−(s+1)} against the recursion's column kernel
        let shape = StepShape::new(1, 1);
        let one = SigmaPoly::one();
        let plus = TruncatedSeries::from_poly(vec![one.clone(), SigmaPoly::sigma()], 10, &SigmaPoly::zero());
        for s in 0..=6u64 {
            let closed = &one_minus_t(&one, 10).pow(s) * &plus.pow_signed(-(s as i64) - 1).unwrap();
            let column: Vec<SigmaPoly> = (0..=10).map(|k| sp_kernel(shape, k, s)).collect();
            assert_eq!(closed, TruncatedSeries::new(column), "s={s}");
        }
    }

    #[test]
    fn residuals() {
        let stair = Boundary::staircase(1, 1).unwrap();
        let lp = lift_counts(&lp_recursion(&stair, 20).values);
        assert_eq!(appell_residual(&stair, PathFamily::Lattice, &lp, 20).unwrap(), 20);
        let half = Boundary::staircase(1, 2).unwrap();
        let shape = StepShape::new(2, 1);
        let sp = sp_recursion(&half, shape, 12).unwrap().values;
        assert_eq!(appell_residual(&half, PathFamily::Diagonal(shape), &sp, 12).unwrap(), 12);
        let mut bad = lp.clone();
        bad[3] = bad[3].clone() + SigmaPoly::one();
        assert!(matches!(
            appell_residual(&stair, PathFamily::Lattice, &bad, 20),
            Err(Error::ResidualNonzero { order: 3 })
        ));
    }

    #[test]
    fn reduced_form_for_tennis() {
        // (1 − t)·… moved across: Ψ′ = (1 − (1−t)) / (t(1−t)) = 1/(1−t)
        let tennis = Boundary::tennis(2, 2).unwrap();
        let data = appell_data(&tennis, PathFamily::Lattice, 8).unwrap().specialize(&Rational::zero());
        let rhs = data.reduced_rhs(&[Rational::one()]).unwrap();
        let expect = one_minus_t(&Rational::one(), rhs.order()).invert().unwrap();
        assert_eq!(rhs, expect);
    }

    #[test]
    fn parity() {
        assert!(parity_check(&Boundary::staircase(1, 1).unwrap(), 12).unwrap());
        assert!(parity_check(&Boundary::new(vec![2], vec![1, 3]).unwrap(), 10).unwrap());
    }

    #[test]
    fn parking_counts() {
        let stair = Boundary::staircase(1, 1).unwrap();
        assert_eq!(parking_recursion(&stair, 5).values, ints(&[1, 1, 3, 16, 125, 1296]));
        let flat = Boundary::arithmetic(3, 0).unwrap();
        let bf = oracle::parking_table_bf(&flat, 4).unwrap().values;
        assert_eq!(parking_recursion(&flat, 4).values, bf);
        assert_eq!(parking_recursion(&stair, 0).values, ints(&[1]));
    }
}
