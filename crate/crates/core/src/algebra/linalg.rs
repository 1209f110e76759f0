//! Exact dense linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::Rational;

/// Determinant by Gaussian elimination over Q.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves a square non-singular system; `None` if singular.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn remove_content(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer row reduction without division (beyond content removal).
///
/// On return every pivot column is zero outside its own row. Returns the
/// pivot columns in row order; rows past the rank are zero.
pub fn fraction_free_reduce(rows: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // smallest non-zero entry keeps growth down
        let Some(pivot) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(pivot, rank);
        remove_content(&mut rows[rank]);
        let (head, tail) = rows.split_at_mut(rank);
        let (prow, tail) = tail.split_first_mut().unwrap();
        let p = prow[col].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let m = row[col].clone();
            for c in 0..ncols {
                row[c] = &p * &row[c] - &m * &prow[c];
            }
            remove_content(row);
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Integer basis of the right nullspace of `rows` (each vector primitive).
pub fn integer_nullspace(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let pivots = fraction_free_reduce(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (r, &c)| acc.lcm(&rows[r][c]));
    free.iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = lcm.clone();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -(&rows[r][f] * &lcm) / &rows[r][c];
            }
            remove_content(&mut v);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&q(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(determinant(&q(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&q(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn solve_small() {
        let x = solve(&q(&[&[2, 1], &[1, 3]]), &[int(1), int(2)]).unwrap();
        assert_eq!(x, vec![rational(1, 5), rational(3, 5)]);
        assert!(solve(&q(&[&[1, 1], &[1, 1]]), &[int(1), int(1)]).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let basis = integer_nullspace(rows.clone(), 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot: BigInt = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
