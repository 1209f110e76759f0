//! Brute-force dynamic-programming counts. Slow on purpose and easy to audit;
//! every formula elsewhere in the crate is checked against these.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binom, SigmaPoly};
use crate::boundary::{Boundary, PathFamily, StepShape};
use crate::error::{Error, Result};

/// What a [`CountTable`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Lattice,
    AbPath(StepShape),
    Parking,
}

/// Counts `values[n]` for `n = 0..=N` under one boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable<V> {
    pub kind: CountKind,
    pub boundary: Boundary,
    pub values: Vec<V>,
}

impl<V> CountTable<V> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Lattice paths from `(0,0)` to `(x−1, n)`.
pub fn count_rect_lattice(x: u64, n: u64) -> BigInt {
    assert!(x >= 1, "rectangle width must be positive");
    let mut row = vec![BigInt::one(); x as usize];
    for _ in 0..n {
        for u in 1..row.len() {
            let left = row[u - 1].clone();
            row[u] += left;
        }
    }
    row.pop().unwrap()
}

/// `binom(x+n−1, n)`.
pub fn rect_lattice_formula(x: u64, n: u64) -> BigInt {
    binom((x + n) as i64 - 1, n as i64)
}

/// σ-weighted `(a,b)`-paths from `(0,0)` to `(x−1, n)`.
pub fn count_rect_ab(shape: StepShape, x: u64, n: u64) -> Result<SigmaPoly> {
    if shape.b == 0 {
        return Err(Error::UnsupportedShape { a: shape.a, b: shape.b });
    }
    assert!(x >= 1, "rectangle width must be positive");
    let (w, h) = (x as usize, n as usize);
    let (a, b) = (shape.a as usize, shape.b as usize);
    let sigma = SigmaPoly::sigma();
    let mut grid = vec![vec![SigmaPoly::zero(); w]; h + 1];
    grid[0][0] = SigmaPoly::one();
    for v in 0..=h {
        for u in 0..w {
            let mut acc = grid[v][u].clone();
            if u > 0 {
                acc = acc + &grid[v][u - 1];
            }
            if v > 0 {
                acc = acc + &grid[v - 1][u];
            }
            if v >= b && u >= a {
                acc = acc + &(&grid[v - b][u - a] * &sigma);
            }
            grid[v][u] = acc;
        }
    }
    Ok(grid[h][w - 1].clone())
}

/// Closed double-binomial count of [`count_rect_ab`], summed over diagonal
/// counts `d` with `d·a < x` (wider diagonals cannot fit).
pub fn rect_ab_formula(shape: StepShape, x: u64, n: u64) -> Result<SigmaPoly> {
    if shape.b == 0 {
        return Err(Error::UnsupportedShape { a: shape.a, b: shape.b });
    }
    let (a, b, x, n) = (shape.a as i64, shape.b as i64, x as i64, n as i64);
    let mut coeffs = Vec::new();
    for d in 0..=n / b {
        let mut c = BigInt::zero();
        if d * a < x {
            let m = n - d * (b - 1);
            c = crate::algebra::binomial(&BigInt::from(d * a - x), m as u64) * binom(m, d);
            if m % 2 == 1 {
                c = -c;
            }
        }
        coeffs.push(c);
    }
    Ok(SigmaPoly::new(coeffs))
}

/// `LP_0..LP_N` by counting non-decreasing `(x_0..x_{n−1})` with `x_i < s_i`.
pub fn lp_table_dp(boundary: &Boundary, max_n: usize) -> CountTable<BigInt> {
    let values = lp_counts_for_terms(&boundary.terms(max_n));
    CountTable { kind: CountKind::Lattice, boundary: boundary.clone(), values }
}

/// `LP_0..LP_N` for an explicit list of terms `s_0..s_{N−1}`, which need not
/// be ultimately periodic.
pub fn lp_counts_for_terms(s: &[u64]) -> Vec<BigInt> {
    // ways[x] = sequences so far whose last entry is x
    let mut ways = vec![BigInt::one()];
    let mut values = vec![BigInt::one()];
    for &si in s {
        let width = si as usize;
        let mut next = vec![BigInt::zero(); width];
        let mut running = BigInt::zero();
        for (x, slot) in next.iter_mut().enumerate() {
            if let Some(w) = ways.get(x) {
                running += w;
            }
            *slot = running.clone();
        }
        values.push(next.iter().sum());
        ways = next;
    }
    values
}

pub fn count_lp_dp(boundary: &Boundary, n: usize) -> BigInt {
    lp_table_dp(boundary, n).values.pop().unwrap()
}

/// `SP_0..SP_N` by a walk over lattice points `(u, v)`.
///
/// The constraint at height `v` is checked when the path leaves that height:
/// north steps need `u < s_v`, and a diagonal from `(u,v)` needs
/// `u·b + a·(i−v) < s_i·b` for each height `i` it crosses in `[v, v+b)`.
pub fn sp_table_dp(boundary: &Boundary, shape: StepShape, max_n: usize) -> Result<CountTable<SigmaPoly>> {
    if shape.b == 0 {
        return Err(Error::UnsupportedShape { a: shape.a, b: shape.b });
    }
    boundary.slope_condition(shape).into_result()?;
    let s = boundary.terms(max_n + 1);
    let width = s[max_n] as usize;
    let (a, b) = (shape.a as usize, shape.b as usize);
    let sigma = SigmaPoly::sigma();
    let mut grid = vec![vec![SigmaPoly::zero(); width]; max_n + 1];
    grid[0][0] = SigmaPoly::one();
    for v in 0..=max_n {
        for u in 0..width {
            let mut acc = grid[v][u].clone();
            if u > 0 {
                acc = acc + &grid[v][u - 1];
            }
            if v > 0 && (u as u64) < s[v - 1] {
                acc = acc + &grid[v - 1][u];
            }
            if v >= b && u >= a {
                let (u0, v0) = (u - a, v - b);
                let fits = (v0..v).all(|i| (u0 * b + a * (i - v0)) < s[i] as usize * b);
                if fits {
                    acc = acc + &(&grid[v0][u0] * &sigma);
                }
            }
            grid[v][u] = acc;
        }
    }
    let values = (0..=max_n).map(|n| grid[n][s[n] as usize - 1].clone()).collect();
    Ok(CountTable { kind: CountKind::AbPath(shape), boundary: boundary.clone(), values })
}

pub fn count_sp_dp(boundary: &Boundary, shape: StepShape, n: usize) -> Result<SigmaPoly> {
    Ok(sp_table_dp(boundary, shape, n)?.values.pop().unwrap())
}

/// Largest search space [`count_parking_bf`] will walk.
pub const PARKING_LIMIT: u128 = 100_000_000;

/// `P_n`: sequences in `[0, s_{n−1})^n` whose sorted rearrangement stays
/// below the boundary, counted one by one.
pub fn count_parking_bf(boundary: &Boundary, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    let s = boundary.terms(n);
    let base = s[n - 1] as usize;
    let size = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > PARKING_LIMIT {
        return Err(Error::TooLarge { size });
    }
    let mut digits = vec![0usize; n];
    let mut sorted = vec![0usize; n];
    let mut count: u64 = 0;
    loop {
        sorted.copy_from_slice(&digits);
        sorted.sort_unstable();
        if sorted.iter().zip(&s).all(|(&x, &si)| (x as u64) < si) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(BigInt::from(count));
            }
            digits[pos] += 1;
            if digits[pos] < base {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

pub fn parking_table_bf(boundary: &Boundary, max_n: usize) -> Result<CountTable<BigInt>> {
    let values = (0..=max_n).map(|n| count_parking_bf(boundary, n)).collect::<Result<_>>()?;
    Ok(CountTable { kind: CountKind::Parking, boundary: boundary.clone(), values })
}

/// Checks the first-crossing decomposition
/// `rect(x, n) = Σ_m bounded(m)·rect(x − s_m, n − m)` with DP counts on both
/// sides.
pub fn decomposition_check(boundary: &Boundary, family: PathFamily, x: u64, n: usize) -> Result<bool> {
    let s = boundary.terms(n + 1);
    if x <= s[n] {
        return Err(Error::PreconditionViolated(format!(
            "rectangle width {x} must exceed s_{n} = {}",
            s[n]
        )));
    }
    match family {
        PathFamily::Lattice => {
            let bounded = lp_table_dp(boundary, n).values;
            let rhs: BigInt = (0..=n)
                .map(|m| &bounded[m] * count_rect_lattice(x - s[m], (n - m) as u64))
                .sum();
            Ok(rhs == count_rect_lattice(x, n as u64))
        }
        PathFamily::Diagonal(shape) => {
            let bounded = sp_table_dp(boundary, shape, n)?.values;
            let mut rhs = SigmaPoly::zero();
            for m in 0..=n {
                rhs = rhs + &(&bounded[m] * &count_rect_ab(shape, x - s[m], (n - m) as u64)?);
            }
            Ok(rhs == count_rect_ab(shape, x, n as u64)?)
        }
    }
}
