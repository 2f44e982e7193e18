//! Evaluation of the partial sums at points, at exact rationals, and on
//! dense grids.
//!
//! The two families are
//!
//! ```text
//! f_n(x) = sum_{k=1..n} |sin(k pi x)| / k      (AbsSin)
//! g_n(x) = sum_{k=1..n} |cos(k pi x)| / k      (AbsCos)
//! ```
//!
//! Both are even and 1-periodic, bounded by the harmonic number H_n, and
//! monotone in n. Figure scale means n = 50000 over thousands of grid points,
//! so the point evaluator keeps per-term argument error at the
//! `k * eps` level (reduce `k*x` modulo 2, then one multiply by pi) and uses
//! compensated accumulation.

use rayon::prelude::*;

use crate::error::Error;
use crate::kahan::KahanSum;
use crate::rationals::{mod_inverse, Rational};

/// Which absolute-value series to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `sum |sin(k pi x)| / k`
    AbsSin,
    /// `sum |cos(k pi x)| / k`
    AbsCos,
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::AbsSin => "sin",
            SeriesKind::AbsCos => "cos",
        }
    }
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A uniform, endpoint-inclusive grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    from: f64,
    to: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(from: f64, to: f64, points: usize) -> Result<Self, Error> {
        if !(from.is_finite() && to.is_finite() && from < to && points >= 2) {
            return Err(Error::InvalidGrid { from, to, points });
        }
        Ok(GridSpec { from, to, points })
    }

    pub fn from(&self) -> f64 {
        self.from
    }

    pub fn to(&self) -> f64 {
        self.to
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Grid spacing h.
    pub fn step(&self) -> f64 {
        (self.to - self.from) / (self.points - 1) as f64
    }

    /// The i-th grid point, `from + i * h`. Defined by this formula so every
    /// caller sees bit-identical coordinates.
    pub fn x(&self, i: usize) -> f64 {
        self.from + i as f64 * self.step()
    }

    /// Index of the grid point closest to `x`.
    pub fn nearest_index(&self, x: f64) -> usize {
        let i = ((x - self.from) / self.step()).round();
        (i.max(0.0) as usize).min(self.points - 1)
    }
}

/// Default guard on `points * n` for grid evaluation.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000_000;

#[inline]
fn term(kind: SeriesKind, k: u64, x_unit: f64) -> f64 {
    // k*x stays exact enough: x in [0,1), so the product's rounding is below
    // k * eps, and the mod-2 reduction is exact in binary floating point.
    let t = (k as f64 * x_unit) % 2.0;
    let v = match kind {
        SeriesKind::AbsSin => (std::f64::consts::PI * t).sin().abs(),
        SeriesKind::AbsCos => (std::f64::consts::PI * t).cos().abs(),
    };
    v / k as f64
}

/// Value of the n-term partial sum at `x`.
///
/// Inputs outside [0, 1) are folded by periodicity first (both series are
/// even and 1-periodic, so the fold loses nothing).
pub fn eval_point(kind: SeriesKind, n: u64, x: f64) -> f64 {
    let u = x.rem_euclid(1.0);
    let mut acc = KahanSum::new();
    for k in 1..=n {
        acc.add(term(kind, k, u));
    }
    acc.value()
}

/// Same value as [`eval_point`] at p/q, but grouped by residue class.
///
/// |sin(k pi p/q)| depends only on `k p mod q`, so the sum collapses to at
/// most q - 1 trig evaluations weighted by harmonic sums over arithmetic
/// progressions:
///
/// ```text
/// f_n(p/q) = sum_{res=1..q-1} sin(res pi / q) * W_res(n),
/// W_res(n) = sum { 1/k : k <= n, k p = res (mod q) }
/// ```
pub fn eval_at_rational(kind: SeriesKind, n: u64, r: Rational) -> f64 {
    let r = r.mod_one();
    let (p, q) = (r.num(), r.den());
    if q == 1 {
        return match kind {
            // Every |sin| term vanishes at integers.
            SeriesKind::AbsSin => 0.0,
            // Every |cos| term is 1, leaving the harmonic number.
            SeriesKind::AbsCos => {
                let mut acc = KahanSum::new();
                for k in 1..=n {
                    acc.add(1.0 / k as f64);
                }
                acc.value()
            }
        };
    }
    let inv = mod_inverse(p, q);
    let mut total = KahanSum::new();
    for res in 0..q {
        let magnitude = match kind {
            SeriesKind::AbsSin => {
                if res == 0 {
                    continue;
                }
                (res as f64 * std::f64::consts::PI / q as f64).sin()
            }
            SeriesKind::AbsCos => {
                if 2 * res == q {
                    continue;
                }
                (res as f64 * std::f64::consts::PI / q as f64).cos().abs()
            }
        };
        // Indices with k p = res (mod q) form the progression k0, k0+q, ...
        let k0 = {
            let k = (inv as i128 * res as i128).rem_euclid(q as i128) as u64;
            if k == 0 {
                q as u64
            } else {
                k
            }
        };
        let mut weight = KahanSum::new();
        let mut k = k0;
        while k <= n {
            weight.add(1.0 / k as f64);
            k += q as u64;
        }
        total.add(magnitude * weight.value());
    }
    total.value()
}

/// Values at every grid point, in grid order.
///
/// Work is partitioned by grid point, never by term index, so each output
/// value is one sequential compensated sum and the result is bit-identical
/// under any rayon worker count. Refuses with [`Error::BudgetExceeded`] when
/// `points * n` exceeds [`DEFAULT_TERM_BUDGET`]; see
/// [`eval_grid_with_budget`] to override.
pub fn eval_grid(kind: SeriesKind, n: u64, grid: &GridSpec) -> Result<Vec<f64>, Error> {
    eval_grid_with_budget(kind, n, grid, DEFAULT_TERM_BUDGET)
}

/// [`eval_grid`] with an explicit term-evaluation budget.
pub fn eval_grid_with_budget(
    kind: SeriesKind,
    n: u64,
    grid: &GridSpec,
    budget: u64,
) -> Result<Vec<f64>, Error> {
    let required = grid.points as u128 * n as u128;
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok((0..grid.points)
        .into_par_iter()
        .map(|i| eval_point(kind, n, grid.x(i)))
        .collect())
}
