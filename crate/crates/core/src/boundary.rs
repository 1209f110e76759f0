//! Ultimately periodic right boundaries and the slope condition.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonal step `(u,v) → (u+a, v+b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StepShape {
    pub a: u64,
    pub b: u64,
}

impl StepShape {
    pub const fn new(a: u64, b: u64) -> Self {
        Self { a, b }
    }
}

impl fmt::Display for StepShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Plain lattice paths, or paths with an extra diagonal step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathFamily {
    Lattice,
    Diagonal(StepShape),
}

/// Outcome of [`Boundary::slope_condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeCheck {
    Satisfied,
    /// `s_{index+step} > s_index − 1 + step·a/b` fails. Horizontal diagonal
    /// steps `(a,0)` report `step = 0`.
    Violated { index: usize, step: usize },
}

impl SlopeCheck {
    pub fn is_satisfied(self) -> bool {
        self == SlopeCheck::Satisfied
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            SlopeCheck::Satisfied => Ok(()),
            SlopeCheck::Violated { index, step } => {
                Err(Error::SlopeConditionViolated { index, step })
            }
        }
    }
}

/// A non-decreasing positive boundary `s_0, s_1, …` given by a finite prefix
/// `a_0..a_{r−1}` and a periodic block `b_0..b_{k−1}` of width `l = b_{k−1}`:
/// `s_{r+qk+j} = p + b_j + q·l` with `p = a_{r−1}` (or 0 without a prefix).
///
/// Values are always stored in canonical form (shortest period, then shortest
/// prefix), so equal term sequences compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBoundary")]
pub struct Boundary {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

#[derive(Deserialize)]
struct RawBoundary {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

impl TryFrom<RawBoundary> for Boundary {
    type Error = Error;
    fn try_from(raw: RawBoundary) -> Result<Self> {
        Boundary::new(raw.prefix, raw.period)
    }
}

impl Boundary {
    pub fn new(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidBoundary("empty period".into()));
        }
        if prefix.contains(&0) {
            return Err(Error::InvalidBoundary("prefix terms must be positive".into()));
        }
        if prefix.is_empty() && period[0] == 0 {
            return Err(Error::InvalidBoundary("first term must be positive".into()));
        }
        if prefix.windows(2).any(|w| w[0] > w[1]) || period.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidBoundary("terms must be non-decreasing".into()));
        }
        Ok(Self { prefix, period }.canonical())
    }

    /// `s_n = initial[n]` for `n < initial.len()`, then `s_n = s_{n−k} + l`.
    pub fn from_eventually_periodic(initial: &[u64], k: usize, l: u64) -> Result<Self> {
        if k == 0 || initial.len() < k {
            return Err(Error::InvalidBoundary("need at least one full period of terms".into()));
        }
        let n = initial.len();
        let ext = |m: usize| initial[m - k] + l;
        let mut next: Vec<u64> = Vec::with_capacity(k);
        for m in n..n + k {
            let v = if m - k < n { ext(m) } else { next[m - k - n] + l };
            next.push(v);
        }
        let p = initial[n - 1];
        if next.iter().any(|&x| x < p) {
            return Err(Error::InvalidBoundary("terms must be non-decreasing".into()));
        }
        Self::new(initial.to_vec(), next.iter().map(|&x| x - p).collect())
    }

    /// Tennis-ball boundary `1, (l+1)×k, (2l+1)×k, …`.
    pub fn tennis(k: usize, l: u64) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidBoundary("tennis boundary needs k, l ≥ 1".into()));
        }
        Self::new(vec![1], vec![l; k])
    }

    /// `s_i = c + i·d`.
    pub fn arithmetic(c: u64, d: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidBoundary("c must be positive".into()));
        }
        Self::new(vec![c], vec![d])
    }

    /// `s_i = ⌈i/γ⌉ + 1` for `γ = num/den > 0`.
    pub fn staircase(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidBoundary("slope must be a positive rational".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let initial: Vec<u64> = (0..num).map(|i| (i * den).div_ceil(num) + 1).collect();
        Self::from_eventually_periodic(&initial, num as usize, den)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Length `r` of the prefix.
    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    /// Height `k` of the periodic block.
    pub fn height(&self) -> usize {
        self.period.len()
    }

    /// Width `l = b_{k−1}`.
    pub fn width(&self) -> u64 {
        *self.period.last().unwrap()
    }

    /// `p = a_{r−1}`, or 0 without a prefix.
    pub fn offset(&self) -> u64 {
        self.prefix.last().copied().unwrap_or(0)
    }

    pub fn term(&self, n: usize) -> u64 {
        let r = self.prefix.len();
        if n < r {
            return self.prefix[n];
        }
        let k = self.period.len();
        let (q, j) = ((n - r) / k, (n - r) % k);
        self.offset() + self.period[j] + q as u64 * self.width()
    }

    /// `s_0..s_{count−1}`.
    pub fn terms(&self, count: usize) -> Vec<u64> {
        (0..count).map(|n| self.term(n)).collect()
    }

    fn canonical(self) -> Self {
        let r = self.prefix.len();
        let k = self.period.len();
        let l = self.width();
        let terms = self.terms(r + 2 * k + 1);
        // s_{-1} = 0 lets an empty prefix take part in the search
        let s = |n: i64| -> u64 { if n < 0 { 0 } else { terms[n as usize] } };
        let holds = |n: i64, kk: usize, ll: u64| s(n + kk as i64) == s(n) + ll;
        let (kk, ll) = (1..=k)
            .filter(|d| k.is_multiple_of(*d) && (l * *d as u64).is_multiple_of(k as u64))
            .map(|d| (d, l * d as u64 / k as u64))
            .find(|&(d, w)| (r..r + k).all(|n| holds(n as i64, d, w)))
            .unwrap_or((k, l));
        let mut start = r as i64;
        while start > -1 && holds(start - 1, kk, ll) {
            start -= 1;
        }
        // prefix = s_0..s_start
        let prefix: Vec<u64> = (0..=start).map(s).collect();
        let p = s(start);
        let period: Vec<u64> = (1..=kk as i64).map(|j| s(start + j) - p).collect();
        Self { prefix, period }
    }

    /// Checks `s_{j+i} > s_j − 1 + i·a/b` for `i = 1..=b` over a window of `j`
    /// large enough to cover every residue class of the period.
    pub fn slope_condition(&self, shape: StepShape) -> SlopeCheck {
        let window = self.prefix.len() + 2 * self.period.len() + shape.b as usize;
        self.slope_condition_in_window(shape, window)
    }

    /// [`slope_condition`](Self::slope_condition) restricted to `j < window`.
    pub fn slope_condition_in_window(&self, shape: StepShape, window: usize) -> SlopeCheck {
        let StepShape { a, b } = shape;
        if b == 0 {
            return if a == 0 {
                SlopeCheck::Satisfied
            } else {
                SlopeCheck::Violated { index: 0, step: 0 }
            };
        }
        let (a, b) = (a as i128, b as i128);
        for j in 0..window {
            let sj = self.term(j) as i128;
            for i in 1..=b {
                let si = self.term(j + i as usize) as i128;
                if b * si <= b * (sj - 1) + i * a {
                    return SlopeCheck::Violated { index: j, step: i as usize };
                }
            }
        }
        SlopeCheck::Satisfied
    }

    pub fn family_allowed(&self, family: PathFamily) -> SlopeCheck {
        match family {
            PathFamily::Lattice => SlopeCheck::Satisfied,
            PathFamily::Diagonal(shape) => self.slope_condition(shape),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}", self.prefix, self.period)
    }
}
