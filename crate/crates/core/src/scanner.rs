//! Figure-scale exploration: find cusps on dense grids, match them to
//! small-denominator rationals, and locate local maxima with
//! continued-fraction diagnostics.
//!
//! The cusp detector works on the discrete second difference
//!
//! ```text
//! sigma(x) = (f(x - h) + f(x + h) - 2 f(x)) / (2 h)
//! ```
//!
//! which approximates half the slope jump, i.e. `pi * B` at an exact cusp.
//! At figure scale the dense carpet of tiny cusps between grid points eats
//! into that ceiling, but the big cusps still tower over the background, so
//! ranking by sigma recovers them reliably.

use std::f64::consts::PI;

use crate::error::Error;
use crate::rationals::{
    cf_expand, gcd, ContinuedFraction, Rational, CF_DEFAULT_TOL, MAX_DENOMINATOR,
};
use crate::series::{eval_grid, eval_point, GridSpec, SeriesKind};
use crate::slopes::cusp_count_b;

/// A rational identified as the likely home of a detected cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspMatch {
    pub rational: Rational,
    /// |grid_x - p/q|; at most the grid spacing by construction.
    pub residual: f64,
    /// `pi * B` from the slope calculus at the matched rational.
    pub predicted_prominence: f64,
}

/// One upward kink found on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspCandidate {
    pub grid_x: f64,
    /// Discrete second-difference strength, units of slope.
    pub prominence: f64,
    pub matched: Option<CuspMatch>,
}

/// Output of a cusp scan.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspScan {
    /// Grid spacing h.
    pub spacing: f64,
    /// Set when h > 1 / (2 q_max^2): distinct candidate rationals can then
    /// share a grid cell and matching may be ambiguous.
    pub too_coarse: bool,
    /// Sorted by descending prominence, ties by ascending grid_x.
    pub candidates: Vec<CuspCandidate>,
}

/// A grid-local maximum, refined and annotated with approximability
/// diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximumReport {
    pub location: f64,
    pub value: f64,
    pub cf: ContinuedFraction,
    /// `(q, q * dist(q * location, Z))` along the convergents, q <= q_max.
    pub quality: Vec<(i64, f64)>,
}

/// Smallest-denominator rational within `h` of `x`, if any.
///
/// Small q wins outright (cusps of small denominators dominate prominence);
/// among numerators at the same q, the closest wins, then the smaller.
fn match_rational(x: f64, h: f64, q_max: i64) -> Option<(Rational, f64)> {
    for q in 1..=q_max {
        let p0 = (x * q as f64).round() as i64;
        let mut best: Option<(Rational, f64)> = None;
        for p in [p0, p0 - 1, p0 + 1] {
            if gcd(p.unsigned_abs(), q as u64) != 1 {
                continue;
            }
            let cand = Rational::new(p, q).expect("q >= 1");
            if cand.den() != q {
                continue;
            }
            let d = cand.dist(x);
            if d <= h {
                let better = match &best {
                    None => true,
                    Some((br, bd)) => d < *bd || (d == *bd && cand.num() < br.num()),
                };
                if better {
                    best = Some((cand, d));
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Cusp detection on already-evaluated grid values.
///
/// Useful when the caller needs the raw curve as well; [`detect_cusps`] is
/// the evaluate-and-detect convenience wrapper.
pub fn detect_cusps_in(
    values: &[f64],
    grid: &GridSpec,
    kind: SeriesKind,
    n: u64,
    tau: f64,
    q_max: i64,
) -> Result<CuspScan, Error> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::NonPositiveThreshold(tau));
    }
    if !(2..=MAX_DENOMINATOR).contains(&q_max) {
        return Err(Error::DenominatorOutOfRange { min: 2, got: q_max });
    }
    assert_eq!(values.len(), grid.points(), "values must cover the grid");
    let h = grid.step();
    let points = grid.points();

    // sigma[i] is the second difference at interior grid index i + 1.
    let sigma: Vec<f64> = (1..points - 1)
        .map(|i| (values[i - 1] + values[i + 1] - 2.0 * values[i]) / (2.0 * h))
        .collect();

    let mut candidates = Vec::new();
    for (j, &s) in sigma.iter().enumerate() {
        if s <= tau {
            continue;
        }
        let left = if j > 0 {
            sigma[j - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = if j + 1 < sigma.len() {
            sigma[j + 1]
        } else {
            f64::NEG_INFINITY
        };
        if s > left && s > right {
            let x = grid.x(j + 1);
            let matched = match_rational(x, h, q_max).map(|(rational, residual)| CuspMatch {
                rational,
                residual,
                predicted_prominence: PI * cusp_count_b(n, rational, kind) as f64,
            });
            candidates.push(CuspCandidate {
                grid_x: x,
                prominence: s,
                matched,
            });
        }
    }
    candidates.sort_by(|a, b| {
        b.prominence
            .total_cmp(&a.prominence)
            .then(a.grid_x.total_cmp(&b.grid_x))
    });

    Ok(CuspScan {
        spacing: h,
        too_coarse: h > 1.0 / (2.0 * (q_max * q_max) as f64),
        candidates,
    })
}

/// Evaluate the series on the grid and detect cusps.
pub fn detect_cusps(
    kind: SeriesKind,
    n: u64,
    grid: &GridSpec,
    tau: f64,
    q_max: i64,
) -> Result<CuspScan, Error> {
    let values = eval_grid(kind, n, grid)?;
    detect_cusps_in(&values, grid, kind, n, tau, q_max)
}

/// Golden-section maximization confined to [a, b].
///
/// Derivative-free on purpose: the series is piecewise smooth but kinks at
/// densely many rationals. Confinement to one grid cell keeps the bracket
/// from straddling a detected cusp.
fn golden_max(kind: SeriesKind, n: u64, mut a: f64, mut b: f64, iters: u32) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    for _ in 0..iters {
        let c = b - (b - a) * INVPHI;
        let d = a + (b - a) * INVPHI;
        if eval_point(kind, n, c) < eval_point(kind, n, d) {
            a = c;
        } else {
            b = d;
        }
    }
    0.5 * (a + b)
}

/// Grid-local maxima, golden-section refined within their bracketing cell,
/// each with continued-fraction and approximability diagnostics.
///
/// Exploratory: no claim about where maxima can or cannot sit is encoded,
/// the diagnostics are one reasonable lens (`q * ||q x||` along convergents).
pub fn find_local_maxima(
    kind: SeriesKind,
    n: u64,
    grid: &GridSpec,
    refine_iters: u32,
    q_max: i64,
) -> Result<Vec<MaximumReport>, Error> {
    if !(1..=MAX_DENOMINATOR).contains(&q_max) {
        return Err(Error::DenominatorOutOfRange { min: 1, got: q_max });
    }
    let values = eval_grid(kind, n, grid)?;
    let mut out = Vec::new();
    for i in 1..grid.points() - 1 {
        if !(values[i] > values[i - 1] && values[i] > values[i + 1]) {
            continue;
        }
        let location = if refine_iters == 0 {
            grid.x(i)
        } else {
            golden_max(kind, n, grid.x(i - 1), grid.x(i + 1), refine_iters)
        };
        out.push(MaximumReport {
            location,
            value: eval_point(kind, n, location),
            cf: cf_expand(location, 32, CF_DEFAULT_TOL),
            quality: crate::rationals::approx_quality(location, q_max)?,
        });
    }
    Ok(out)
}
