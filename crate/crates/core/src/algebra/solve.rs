//! Square linear systems over truncated Laurent–Puiseux series.

use super::ramified::RamifiedSeries;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Solution of a series system with the order every component is good to.
#[derive(Debug, Clone)]
pub struct SeriesSolution<R: Ring> {
    pub values: Vec<RamifiedSeries<R>>,
    pub order: i64,
}

/// Solves `matrix · x = rhs`.
///
/// Elimination is division-free (`row ← p·row − m·pivot_row`) and picks the
/// pivot of smallest known valuation in each column; the only divisions
/// happen in back substitution.
pub fn linear_solve_series<R: Ring>(
    mut matrix: Vec<Vec<RamifiedSeries<R>>>,
    mut rhs: Vec<RamifiedSeries<R>>,
) -> Result<SeriesSolution<R>> {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n) && rhs.len() == n);
    for col in 0..n {
        let pivot = (col..n)
            .filter_map(|r| matrix[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r)
            .ok_or(Error::SingularWithinPrecision)?;
        matrix.swap(pivot, col);
        rhs.swap(pivot, col);
        let p = matrix[col][col].clone();
        for r in col + 1..n {
            let m = matrix[r][col].clone();
            if m.valuation().is_none() && m.order() >= p.order() {
                continue;
            }
            for c in col + 1..n {
                matrix[r][c] = &(&p * &matrix[r][c]) - &(&m * &matrix[col][c]);
            }
            rhs[r] = &(&p * &rhs[r]) - &(&m * &rhs[col]);
        }
    }
    let mut values: Vec<Option<RamifiedSeries<R>>> = vec![None; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..n {
            acc = &acc - &(&matrix[i][j] * values[j].as_ref().unwrap());
        }
        values[i] = Some(acc.div(&matrix[i][i])?);
    }
    let values: Vec<RamifiedSeries<R>> = values.into_iter().map(Option::unwrap).collect();
    let order = values.iter().map(RamifiedSeries::order).min().unwrap_or(i64::MAX);
    Ok(SeriesSolution { values, order })
}

/// Determinant by permutation expansion; meant for small matrices.
pub fn series_determinant<R: Ring>(matrix: &[Vec<RamifiedSeries<R>>]) -> RamifiedSeries<R> {
    let n = matrix.len();
    assert!(n >= 1);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: Option<RamifiedSeries<R>> = None;
    permute(&mut perm, 0, &mut |p, sign| {
        let mut term = matrix[0][p[0]].clone();
        for (i, &c) in p.iter().enumerate().skip(1) {
            term = &term * &matrix[i][c];
        }
        if !sign {
            term = -&term;
        }
        total = Some(match total.take() {
            None => term,
            Some(t) => &t + &term,
        });
    }, true);
    total.unwrap()
}

fn permute(perm: &mut Vec<usize>, depth: usize, visit: &mut impl FnMut(&[usize], bool), even: bool) {
    if depth == perm.len() {
        visit(perm, even);
        return;
    }
    for i in depth..perm.len() {
        perm.swap(depth, i);
        permute(perm, depth + 1, visit, if i == depth { even } else { !even });
        perm.swap(depth, i);
    }
}
