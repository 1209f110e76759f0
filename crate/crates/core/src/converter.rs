//! From an Appell relation on an ultimately periodic boundary to ordinary
//! generating functions.
//!
//! With `z = t^k φ(t)^l`, the tail of the Appell relation reads
//! `Σ_j Q_j(z)·t^j φ(t)^{b_j} = Ψ′(t)`. Substituting the `k` fractional
//! branches `t = τ_m(z)` gives a `k×k` linear system for the sections `Q_j`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    linalg, linear_solve_series, series_determinant, CycloField, CycloNum, RamifiedSeries, Rational, Ring,
    TruncatedSeries,
};
use crate::appell::{appell_data, lp_recursion, sp_recursion, AppellData};
use crate::boundary::{Boundary, PathFamily};
use crate::error::{Error, Result};

/// The `k` branches of `z = t^k h(t)` with zero constant term.
#[derive(Debug, Clone)]
pub struct PuiseuxBranchSet {
    pub k: usize,
    /// The branch whose leading coefficient is 1.
    pub tau0: RamifiedSeries<Rational>,
    /// `τ_m(u) = τ_0(ξ^m u)` for `m = 0..k`.
    pub branches: Vec<RamifiedSeries<CycloNum>>,
    pub field: CycloField,
}

/// `τ_0 = u + c_2 u² + …` with `τ_0^k h(τ_0) = u^k`, known through `u^order`.
///
/// Coefficients come from Lagrange inversion of `t·h(t)^{1/k} = u`:
/// `c_n = (1/n)·[t^{n−1}] h(t)^{−n/k}`, each power expanded with Miller's
/// recurrence. The result is checked by substitution in [`all_branches`].
pub fn solve_branch_zero(h: &TruncatedSeries<Rational>, k: usize, order: usize) -> Result<RamifiedSeries<Rational>> {
    if !h.coeff(0).is_one() {
        return Err(Error::BadConstantTerm);
    }
    if k == 0 {
        return Err(Error::PreconditionViolated("ramification must be positive".into()));
    }
    if order >= 1 && h.order() + 1 < order {
        return Err(Error::InsufficientOrder { needed: order - 1, have: h.order() });
    }
    let hc = h.coeffs();
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let alpha = Rational::new(BigInt::from(-(n as i64)), BigInt::from(k));
        let power = miller_power(hc, &alpha, n - 1);
        *slot = &power[n - 1] / Rational::from_integer(BigInt::from(n));
    }
    Ok(RamifiedSeries::new(k, 0, coeffs, Rational::zero()))
}

/// `A^α` through `t^m` for `A(0) = 1`:
/// `m·P_m = Σ_{i=1}^{m} ((α+1)i − m)·A_i·P_{m−i}`.
fn miller_power(a: &[Rational], alpha: &Rational, top: usize) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    let alpha1 = alpha + Rational::one();
    for m in 1..=top {
        let mut acc = Rational::zero();
        for i in 1..=m.min(a.len() - 1) {
            if a[i].is_zero() {
                continue;
            }
            let w = &alpha1 * Rational::from_integer(BigInt::from(i)) - Rational::from_integer(BigInt::from(m));
            acc += w * &a[i] * &p[m - i];
        }
        p.push(acc / Rational::from_integer(BigInt::from(m)));
    }
    p
}

/// First non-zero order of `τ^k h(τ) − u^k`, if any, within known precision.
pub fn branch_residual<R: Ring>(h: &TruncatedSeries<R>, tau: &RamifiedSeries<R>, k: usize) -> Result<Option<i64>> {
    let lhs = &tau.pow(k as u64) * &tau.substitute_into(h)?;
    let one = h.one_elem();
    let z = RamifiedSeries::monomial(tau.ramification(), one, k as i64, lhs.order());
    Ok((&lhs - &z).valuation())
}

/// All `k` branches by the twist `u ↦ ξ^m u`, each re-verified against
/// `z = τ^k h(τ)`.
pub fn all_branches(tau0: &RamifiedSeries<Rational>, h: &TruncatedSeries<Rational>, k: usize) -> Result<PuiseuxBranchSet> {
    let field = CycloField::new(k);
    let h_cyclo = h.map(|c| field.from_rational(c.clone()));
    let mut branches = Vec::with_capacity(k);
    for m in 0..k {
        let tau = tau0.twist(m as i64, &field);
        if let Some(order) = branch_residual(&h_cyclo, &tau, k)? {
            return Err(Error::BranchResidualNonzero { branch: m, order });
        }
        branches.push(tau);
    }
    Ok(PuiseuxBranchSet { k, tau0: tau0.clone(), branches, field })
}

/// Section generating functions `Q_j(z) = Σ_q ℓ_{r+qk+j} z^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionGF {
    pub boundary: Boundary,
    pub family: PathFamily,
    pub sigma: Rational,
    /// `ℓ_0..ℓ_{r−1}`.
    pub prefix_counts: Vec<Rational>,
    pub sections: Vec<TruncatedSeries<Rational>>,
}

impl SectionGF {
    pub fn prefix_len(&self) -> usize {
        self.prefix_counts.len()
    }
}

/// The `k×k` system at one precision budget (in powers of `u`).
#[derive(Debug, Clone)]
pub struct SectionSystem {
    pub k: usize,
    pub matrix: Vec<Vec<RamifiedSeries<CycloNum>>>,
    pub rhs: Vec<RamifiedSeries<CycloNum>>,
    pub field: CycloField,
}

/// Counts `ℓ_0..ℓ_{r−1}` at the given σ.
pub fn prefix_counts(boundary: &Boundary, family: PathFamily, sigma: &Rational) -> Result<Vec<Rational>> {
    let r = boundary.prefix_len();
    if r == 0 {
        return Ok(Vec::new());
    }
    Ok(match family {
        PathFamily::Lattice => lp_recursion(boundary, r - 1)
            .values
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
        PathFamily::Diagonal(shape) => sp_recursion(boundary, shape, r - 1)?
            .values
            .iter()
            .map(|p| p.eval(sigma))
            .collect(),
    })
}

fn specialized_data(boundary: &Boundary, family: PathFamily, sigma: &Rational, order: usize) -> Result<AppellData<Rational>> {
    Ok(appell_data(boundary, family, order)?.specialize(sigma))
}

/// Builds `M[i][j] = τ_i^j φ(τ_i)^{b_j}` and `rhs[i] = Ψ′(τ_i)`.
///
/// Everything is evaluated at `τ_0` over the rationals and then twisted.
pub fn section_system(
    boundary: &Boundary,
    family: PathFamily,
    sigma: &Rational,
    prefix: &[Rational],
    budget: usize,
) -> Result<SectionSystem> {
    let k = boundary.height();
    let r = boundary.prefix_len();
    let data = specialized_data(boundary, family, sigma, budget + r)?;
    let phi = data.phi.truncate(budget);
    let h = phi.pow(boundary.width());
    let tau0 = solve_branch_zero(&h, k, budget)?;
    let phi_at = tau0.substitute_into(&phi)?;
    let psi_at = tau0.substitute_into(&data.reduced_rhs(prefix)?)?;
    let columns: Vec<RamifiedSeries<Rational>> = boundary
        .period()
        .iter()
        .enumerate()
        .map(|(j, &bj)| &tau0.pow(j as u64) * &phi_at.pow(bj))
        .collect();
    let field = CycloField::new(k);
    let matrix = (0..k)
        .map(|i| columns.iter().map(|c| c.twist(i as i64, &field)).collect())
        .collect();
    let rhs = (0..k).map(|i| psi_at.twist(i as i64, &field)).collect();
    Ok(SectionSystem { k, matrix, rhs, field })
}

fn default_budget(boundary: &Boundary, q_max: usize) -> usize {
    let k = boundary.height();
    let max_b = *boundary.period().iter().max().unwrap() as usize;
    k * q_max + k * (k - 1) / 2 + k * max_b + 8
}

fn sections_at(system: SectionSystem, q_max: usize) -> Result<std::result::Result<Vec<TruncatedSeries<Rational>>, i64>> {
    let k = system.k;
    let solution = linear_solve_series(system.matrix, system.rhs)?;
    if solution.order < (k * q_max) as i64 {
        return Ok(Err(solution.order));
    }
    let mut sections = Vec::with_capacity(k);
    for (j, x) in solution.values.iter().enumerate() {
        let coeffs = x
            .z_coefficients()
            .map_err(|e| Error::NonRationalOutput(format!("section {j} has a term u^{e}")))?;
        let rational = coeffs
            .iter()
            .take(q_max + 1)
            .map(|c| {
                c.to_rational()
                    .ok_or_else(|| Error::NonRationalOutput(format!("section {j} coefficient {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        sections.push(TruncatedSeries::new(rational));
    }
    Ok(Ok(sections))
}

/// Solves for `Q_0..Q_{k−1}` through `z^{q_max}`.
///
/// The budget grows until the tracked precision covers `q_max`; the answer is
/// then recomputed at a larger budget and the two must agree.
pub fn section_gfs(boundary: &Boundary, family: PathFamily, sigma: &Rational, q_max: usize) -> Result<SectionGF> {
    let k = boundary.height();
    let prefix = prefix_counts(boundary, family, sigma)?;
    let mut budget = default_budget(boundary, q_max);
    let mut attempts = 0;
    let (sections, used) = loop {
        let system = section_system(boundary, family, sigma, &prefix, budget)?;
        match sections_at(system, q_max)? {
            Ok(s) => break (s, budget),
            Err(have) => {
                attempts += 1;
                if attempts > 8 {
                    return Err(Error::PrecisionFault(format!(
                        "solution order {have} stays below {} at budget {budget}",
                        k * q_max
                    )));
                }
                budget += k * q_max - have.max(0) as usize + 8;
            }
        }
    };
    let check = section_system(boundary, family, sigma, &prefix, used + k + 8)?;
    match sections_at(check, q_max)? {
        Ok(again) if again == sections => {}
        _ => {
            return Err(Error::PrecisionFault(format!(
                "sections changed when the budget grew past {used}"
            )))
        }
    }
    Ok(SectionGF {
        boundary: boundary.clone(),
        family,
        sigma: sigma.clone(),
        prefix_counts: prefix,
        sections,
    })
}

/// `Σ_{i<r} ℓ_i z^i + z^r Σ_j z^j Q_j(z^k)`.
pub fn assemble_ogf(sections: &SectionGF) -> TruncatedSeries<Rational> {
    let k = sections.sections.len();
    let r = sections.prefix_len();
    let q = sections.sections.iter().map(|s| s.order()).min().unwrap_or(0);
    let order = r + k * (q + 1) - 1;
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (i, c) in sections.prefix_counts.iter().enumerate() {
        coeffs[i] = c.clone();
    }
    for (j, section) in sections.sections.iter().enumerate() {
        for (qq, c) in section.coeffs().iter().enumerate().take(q + 1) {
            coeffs[r + qq * k + j] = c.clone();
        }
    }
    TruncatedSeries::new(coeffs)
}

/// Structural facts about the section matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminantReport {
    pub valuation: i64,
    pub expected_valuation: i64,
    pub leading: CycloNum,
    pub expected_leading: CycloNum,
}

impl DeterminantReport {
    pub fn holds(&self) -> bool {
        self.valuation == self.expected_valuation && self.leading == self.expected_leading
    }
}

/// `det[ξ^{ij}]` over `Q(ξ_k)`.
pub fn root_vandermonde(field: &CycloField) -> CycloNum {
    let k = field.order();
    let rows: Vec<Vec<RamifiedSeries<CycloNum>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| RamifiedSeries::constant(k, field.xi_pow((i * j) as i64), 0))
                .collect()
        })
        .collect();
    series_determinant(&rows).coeff(0).unwrap()
}

/// The determinant of the section matrix should start at `u^{k(k−1)/2}`
/// (`z^{(k−1)/2}`) with coefficient `det[ξ^{ij}]`.
pub fn determinant_check(boundary: &Boundary, family: PathFamily, sigma: &Rational) -> Result<DeterminantReport> {
    let k = boundary.height();
    let prefix = prefix_counts(boundary, family, sigma)?;
    let expected_valuation = (k * (k - 1) / 2) as i64;
    let system = section_system(boundary, family, sigma, &prefix, expected_valuation as usize + 4)?;
    let det = series_determinant(&system.matrix);
    let valuation = det.valuation().ok_or(Error::SingularWithinPrecision)?;
    Ok(DeterminantReport {
        valuation,
        expected_valuation,
        leading: det.leading_coefficient().unwrap(),
        expected_leading: root_vandermonde(&system.field),
    })
}

fn product_over_branches(
    factor: &RamifiedSeries<Rational>,
    k: usize,
    q_max: usize,
) -> Result<TruncatedSeries<Rational>> {
    let field = CycloField::new(k);
    let mut product = factor.twist(0, &field);
    for m in 1..k {
        product = &product * &factor.twist(m as i64, &field);
    }
    // (−1)^{k+1}/z
    let sign = if k % 2 == 1 { field.one() } else { -field.one() };
    let q = product.shift(-(k as i64)).scale(&sign);
    let coeffs = q
        .z_coefficients()
        .map_err(|e| Error::NonRationalOutput(format!("term u^{e}")))?;
    if coeffs.len() < q_max + 1 {
        return Err(Error::PrecisionFault(format!("only {} coefficients known", coeffs.len())));
    }
    let rational = coeffs
        .iter()
        .take(q_max + 1)
        .map(|c| c.to_rational().ok_or_else(|| Error::NonRationalOutput(format!("{c}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(rational))
}

/// `((−1)^{k+1}/z)·Π_j τ_j/(1−τ_j)` for the branches of `z = t^k(1−t)^l`;
/// equals `Σ_q LP_{kq+1} z^q` on the tennis-ball boundary.
pub fn tennis_q0_product(k: usize, l: u64, q_max: usize) -> Result<TruncatedSeries<Rational>> {
    if k == 0 || l == 0 {
        return Err(Error::PreconditionViolated("k and l must be positive".into()));
    }
    let budget = k * q_max + k + 2;
    let one = Rational::one();
    let base = TruncatedSeries::from_poly(vec![one.clone(), -one.clone()], budget, &Rational::zero());
    let h = base.pow(l);
    let tau0 = solve_branch_zero(&h, k, budget)?;
    all_branches(&tau0, &h, k)?;
    let one_minus = &RamifiedSeries::constant(k, one, tau0.order()) - &tau0;
    let factor = tau0.div(&one_minus)?;
    product_over_branches(&factor, k, q_max)
}

/// `((−1)^{k+1}/z)·Π_j (C(ξ^j z^{1/k}) − 1)` with `C` the Catalan series.
pub fn tennis_catalan_product(k: usize, q_max: usize) -> Result<TruncatedSeries<Rational>> {
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be positive".into()));
    }
    let budget = k * q_max + k + 2;
    let mut coeffs = vec![Rational::zero()];
    let mut catalan = BigInt::one();
    for n in 1..=budget as u64 {
        // C_n = C_{n−1}·2(2n−1)/(n+1)
        catalan = catalan * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n + 1);
        coeffs.push(Rational::from_integer(catalan.clone()));
    }
    let factor = RamifiedSeries::new(k, 0, coeffs, Rational::zero());
    product_over_branches(&factor, k, q_max)
}

/// Checks the alternant determinant with rows
/// `[τ_i^{k−1}/(1−τ_i), 1, τ_i, …, τ_i^{k−2}]` against
/// `(−1)^{k+1}·Π_{i<j}(τ_j−τ_i) / Π_j(1−τ_j)`.
pub fn alternant_check(taus: &[Rational]) -> Result<bool> {
    let k = taus.len();
    let one = Rational::one();
    if k == 0 {
        return Err(Error::PreconditionViolated("need at least one value".into()));
    }
    for (i, t) in taus.iter().enumerate() {
        if *t == one || taus[..i].contains(t) {
            return Err(Error::PreconditionViolated("values must be distinct and differ from 1".into()));
        }
    }
    let pow = |t: &Rational, e: usize| num_traits::pow(t.clone(), e);
    let matrix: Vec<Vec<Rational>> = taus
        .iter()
        .map(|t| {
            let mut row = vec![pow(t, k - 1) / (&one - t)];
            row.extend((0..k - 1).map(|e| pow(t, e)));
            row
        })
        .collect();
    let lhs = linalg::determinant(&matrix);
    let mut rhs = if k % 2 == 1 { one.clone() } else { -one.clone() };
    for j in 0..k {
        for i in 0..j {
            rhs *= &taus[j] - &taus[i];
        }
        rhs /= &one - &taus[j];
    }
    Ok(lhs == rhs)
}
