//! Guess-and-verify annihilating polynomials `P(z, y)` with `P(z, F(z)) = 0`.
//!
//! A verified candidate certifies consistency through the verified order. It
//! is not a proof of algebraicity, and minimality is only that of the search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{linalg, Rational, TruncatedSeries};
use crate::error::{Error, Result};

/// `P(z, y) = Σ_{j ≤ dy} Σ_{i ≤ dz} coeffs[j][i]·z^i y^j` with integer
/// coefficients of gcd 1 and a positive leading term (highest `y` power,
/// then highest `z` power).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorCandidate {
    pub dz: usize,
    pub dy: usize,
    pub coeffs: Vec<Vec<BigInt>>,
    pub verified_order: usize,
}

impl Serialize for AnnihilatorCandidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<Vec<String>> = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        let mut s = serializer.serialize_struct("AnnihilatorCandidate", 4)?;
        s.serialize_field("dz", &self.dz)?;
        s.serialize_field("dy", &self.dy)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("verified_order", &self.verified_order)?;
        s.end()
    }
}

impl AnnihilatorCandidate {
    /// Builds a normalized candidate from an unnormalized grid.
    pub fn from_grid(dz: usize, dy: usize, mut coeffs: Vec<Vec<BigInt>>) -> Option<Self> {
        let g = coeffs.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return None;
        }
        let lead = coeffs.iter().rev().flat_map(|row| row.iter().rev()).find(|c| !c.is_zero())?;
        let g = if lead.is_negative() { -g } else { g };
        for c in coeffs.iter_mut().flatten() {
            *c = &*c / &g;
        }
        Some(Self { dz, dy, coeffs, verified_order: 0 })
    }

    /// Human-readable form such as `z*y^2 - y + 1`.
    pub fn to_polynomial_string(&self) -> String {
        let mut out = String::new();
        for (j, row) in self.coeffs.iter().enumerate().rev() {
            for (i, c) in row.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let monomial = match (i, j) {
                    (0, 0) => String::new(),
                    (0, _) => power("y", j),
                    (_, 0) => power("z", i),
                    _ => format!("{}*{}", power("z", i), power("y", j)),
                };
                let magnitude = c.abs();
                let body = if monomial.is_empty() {
                    magnitude.to_string()
                } else if magnitude.is_one() {
                    monomial
                } else {
                    format!("{magnitude}*{monomial}")
                };
                if out.is_empty() {
                    if c.is_negative() {
                        out.push('-');
                    }
                } else {
                    out.push_str(if c.is_negative() { " - " } else { " + " });
                }
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn power(var: &str, e: usize) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// Order through which a guess at bidegree `(dz, dy)` is fitted.
pub fn guessing_order(dz: usize, dy: usize) -> usize {
    (dz + 1) * (dy + 1) + 10
}

fn powers(f: &TruncatedSeries<Rational>, dy: usize, order: usize) -> Vec<TruncatedSeries<Rational>> {
    let f = f.truncate(order);
    let mut out = vec![TruncatedSeries::constant(Rational::one(), order)];
    for j in 1..=dy {
        let next = &out[j - 1] * &f;
        out.push(next);
    }
    out
}

/// Rows `n = 0..=order` of the linear conditions on `p_{ij}`, cleared of
/// denominators. Column `j·(dz+1) + i` holds `z^i y^j`.
fn condition_rows(f: &TruncatedSeries<Rational>, dz: usize, dy: usize, order: usize) -> Vec<Vec<BigInt>> {
    let pw = powers(f, dy, order);
    let ncols = (dz + 1) * (dy + 1);
    (0..=order)
        .map(|n| {
            let mut row = vec![Rational::zero(); ncols];
            for (j, p) in pw.iter().enumerate() {
                for i in 0..=dz.min(n) {
                    row[j * (dz + 1) + i] = p.coeff(n - i).clone();
                }
            }
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_prime(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(PRIME)).to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Rank modulo a large prime. It never exceeds the rank over Q, so full rank
/// here proves the nullspace is trivial.
fn rank_mod_prime(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_prime).collect()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(p, rank);
        let inv = pow_mod(m[rank][col], PRIME - 2);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = mul_mod(row[col], inv);
            for c in col..ncols {
                row[c] = (row[c] + PRIME - mul_mod(factor, pivot_row[c])) % PRIME;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Fits `P` of bidegree `(dz, dy)` to `F` through the guessing order.
/// `Ok(None)` means no such `P` exists at this bidegree.
pub fn guess_annihilator(f: &TruncatedSeries<Rational>, dz: usize, dy: usize) -> Result<Option<AnnihilatorCandidate>> {
    let order = guessing_order(dz, dy);
    if f.order() < order {
        return Err(Error::InsufficientOrder { needed: order, have: f.order() });
    }
    let ncols = (dz + 1) * (dy + 1);
    let rows = condition_rows(f, dz, dy, order);
    if rank_mod_prime(&rows, ncols) == ncols {
        return Ok(None);
    }
    let basis = linalg::integer_nullspace(rows, ncols);
    let Some(v) = basis.into_iter().next() else {
        return Ok(None);
    };
    let grid: Vec<Vec<BigInt>> = v.chunks(dz + 1).map(<[BigInt]>::to_vec).collect();
    let mut candidate = match AnnihilatorCandidate::from_grid(dz, dy, grid) {
        Some(c) => c,
        None => return Ok(None),
    };
    candidate.verified_order = order;
    Ok(Some(candidate))
}

/// First order `n ≤ order` where `P(z, F)` has a non-zero coefficient.
pub fn residual_order(p: &AnnihilatorCandidate, f: &TruncatedSeries<Rational>, order: usize) -> Result<Option<usize>> {
    if f.order() < order {
        return Err(Error::InsufficientOrder { needed: order, have: f.order() });
    }
    let pw = powers(f, p.dy, order);
    let mut acc = TruncatedSeries::constant(Rational::zero(), order);
    for (j, row) in p.coeffs.iter().enumerate() {
        let poly = TruncatedSeries::from_poly(
            row.iter().cloned().map(Rational::from_integer).collect(),
            order,
            &Rational::zero(),
        );
        acc = &acc + &(&poly * &pw[j]);
    }
    Ok(acc.valuation())
}

/// `P(z, F(z)) ≡ 0 mod z^{order+1}`.
pub fn verify_annihilator(p: &AnnihilatorCandidate, f: &TruncatedSeries<Rational>, order: usize) -> Result<bool> {
    Ok(residual_order(p, f, order)?.is_none())
}

/// Smallest bidegree within `(max_dz, max_dy)` whose guess also verifies to
/// twice its guessing order; `d_y` is the outer loop, `d_z` the inner one.
pub fn find_annihilator(
    f: &TruncatedSeries<Rational>,
    max_dz: usize,
    max_dy: usize,
) -> Result<Option<AnnihilatorCandidate>> {
    for dy in 1..=max_dy {
        for dz in 0..=max_dz {
            let check = 2 * guessing_order(dz, dy);
            if f.order() < check {
                return Err(Error::InsufficientOrder { needed: check, have: f.order() });
            }
            if let Some(mut candidate) = guess_annihilator(f, dz, dy)? {
                if verify_annihilator(&candidate, f, check)? {
                    candidate.verified_order = check;
                    return Ok(Some(candidate));
                }
            }
        }
    }
    Ok(None)
}

/// Order `F` must be known to for [`find_annihilator`] with this budget.
pub fn required_order(max_dz: usize, max_dy: usize) -> usize {
    2 * guessing_order(max_dz, max_dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn catalan(order: usize) -> TruncatedSeries<Rational> {
        let mut c = vec![BigInt::one()];
        for n in 1..=order as u64 {
            let next = &c[n as usize - 1] * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n + 1);
            c.push(next);
        }
        TruncatedSeries::new(c.into_iter().map(Rational::from_integer).collect())
    }

    fn grid(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn catalan_equation() {
        let f = catalan(60);
        let p = guess_annihilator(&f, 1, 2).unwrap().unwrap();
        assert_eq!(p.coeffs, grid(&[&[1, 0], &[-1, 0], &[0, 1]]));
        assert_eq!(p.to_polynomial_string(), "z*y^2 - y + 1");
        assert!(verify_annihilator(&p, &f, 60).unwrap());
        assert!(guess_annihilator(&f, 0, 1).unwrap().is_none());
        let found = find_annihilator(&f, 2, 2).unwrap().unwrap();
        assert_eq!(found.coeffs, p.coeffs);
        assert_eq!(found.verified_order, 2 * guessing_order(1, 2));
    }

    #[test]
    fn perturbed_certificate_fails() {
        let f = catalan(40);
        let mut p = guess_annihilator(&f, 1, 2).unwrap().unwrap();
        p.coeffs[0][1] = BigInt::from(1);
        assert_eq!(residual_order(&p, &f, 40).unwrap(), Some(1));
    }

    #[test]
    fn insufficient_order() {
        let f = catalan(10);
        assert!(matches!(guess_annihilator(&f, 1, 2), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn rational_function() {
        // 1/(1−z): (1−z)·y − 1
        let f = TruncatedSeries::new(vec![int(1); 40]);
        let p = find_annihilator(&f, 3, 3).unwrap().unwrap();
        assert_eq!((p.dz, p.dy), (1, 1));
        assert_eq!(p.to_polynomial_string(), "z*y - y + 1");
    }

    #[test]
    fn json_shape() {
        let p = AnnihilatorCandidate::from_grid(1, 1, grid(&[&[-2, 0], &[2, -2]])).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"dz":1,"dy":1,"coeffs":[["1","0"],["-1","1"]],"verified_order":0}"#);
    }
}
