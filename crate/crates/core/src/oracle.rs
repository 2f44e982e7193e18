//! Deliberately naive reference implementations.
//!
//! These share no code with the fast paths they check: no period reduction,
//! no exact residue signs, just literal sums with floating trig and direct
//! sampling. They ship in the library (not only in tests) so the CLI
//! `verify` command can rerun every cross-check on demand.

use std::f64::consts::PI;

use crate::error::Error;
use crate::kahan::KahanSum;
use crate::rationals::Rational;
use crate::series::{eval_point, SeriesKind};

/// Cap on n for the literal sums; they are O(n) with two trig calls per term.
pub const BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// Below this magnitude a floating sine/cosine is treated as zero by the
/// signum. Genuine non-zero values of sin(k pi p/q) are at least ~pi/q while
/// the rounding noise at a true zero stays under n * 4e-16, so the bands are
/// cleanly separated at every scale this oracle is used for.
const SIGN_ZERO_TOL: f64 = 1e-7;

fn fuzzy_sign(v: f64) -> f64 {
    if v.abs() < SIGN_ZERO_TOL {
        0.0
    } else {
        v.signum()
    }
}

/// Literal term-by-term smooth coefficient: the floating-point shadow of
/// [`crate::slopes::smooth_coeff_a`].
pub fn brute_a(n: u64, r: Rational, kind: SeriesKind) -> Result<f64, Error> {
    if n > BRUTE_FORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            required: n as u128,
            budget: BRUTE_FORCE_BUDGET,
        });
    }
    let x = r.mod_one().to_f64();
    let mut acc = KahanSum::new();
    for k in 1..=n {
        let arg = k as f64 * PI * x;
        let term = match kind {
            SeriesKind::AbsSin => fuzzy_sign(arg.sin()) * arg.cos(),
            SeriesKind::AbsCos => -fuzzy_sign(arg.cos()) * arg.sin(),
        };
        acc.add(term);
    }
    Ok(acc.value())
}

/// Which one-sided difference to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One-sided finite difference `(f(x +- delta) - f(x)) / (+-delta)`.
pub fn numeric_slope(kind: SeriesKind, n: u64, x: f64, delta: f64, side: Side) -> f64 {
    let signed = match side {
        Side::Left => -delta,
        Side::Right => delta,
    };
    (eval_point(kind, n, x + signed) - eval_point(kind, n, x)) / signed
}

/// Direct empirical strict-minimum check: true iff the series is higher at
/// `p/q +- delta` for every listed delta.
pub fn is_strict_min_sampled(kind: SeriesKind, n: u64, r: Rational, deltas: &[f64]) -> bool {
    let x0 = r.mod_one().to_f64();
    let center = eval_point(kind, n, x0);
    deltas
        .iter()
        .all(|&d| eval_point(kind, n, x0 + d) > center && eval_point(kind, n, x0 - d) > center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationals::gcd;
    use crate::slopes::{one_sided_slopes, smooth_coeff_a};

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn brute_a_examples() {
        assert!(brute_a(3, rat(1, 3), SeriesKind::AbsSin).unwrap().abs() < 1e-12);
        let a7 = brute_a(7, rat(1, 3), SeriesKind::AbsSin).unwrap();
        assert!((a7 - 0.5).abs() < 1e-9);
        assert!(brute_a(BRUTE_FORCE_BUDGET + 1, rat(1, 3), SeriesKind::AbsSin).is_err());
    }

    #[test]
    fn full_period_sums_vanish() {
        for q in [7i64, 97, 311, 500] {
            for p in [1, 2, q - 1] {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let a = brute_a(q as u64, rat(p, q), SeriesKind::AbsSin).unwrap();
                assert!(
                    a.abs() <= 1e-9 * q as f64,
                    "sum over one period = {a} at {p}/{q}"
                );
            }
        }
    }

    #[test]
    fn brute_agrees_with_period_reduction() {
        for (n, p, q) in [
            (100u64, 1i64, 3i64),
            (5000, 5, 13),
            (20000, 7, 18),
            (9999, 13, 37),
        ] {
            for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
                let fast = smooth_coeff_a(n, rat(p, q), kind);
                let slow = brute_a(n, rat(p, q), kind).unwrap();
                assert!(
                    (fast - slow).abs() <= 1e-9 * n as f64,
                    "{kind} n={n} {p}/{q}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn numeric_slope_examples() {
        let right = numeric_slope(SeriesKind::AbsSin, 2, 0.5, 1e-8, Side::Right);
        assert!((right - PI).abs() < 1e-5, "right slope {right}");
        let left = numeric_slope(SeriesKind::AbsSin, 2, 0.5, 1e-8, Side::Left);
        assert!((left + PI).abs() < 1e-5, "left slope {left}");
        let flat = numeric_slope(SeriesKind::AbsSin, 1, 0.5, 1e-8, Side::Right);
        assert!(flat.abs() < 1e-5, "smooth maximum slope {flat}");
    }

    #[test]
    fn numeric_slopes_match_analytic() {
        let delta = 1e-8;
        for (n, p, q) in [(2u64, 1i64, 2i64), (9, 1, 3), (50, 3, 7), (500, 5, 13)] {
            let r = rat(p, q);
            let rep = one_sided_slopes(n, r, SeriesKind::AbsSin, 1e-9 * q as f64);
            let x = p as f64 / q as f64;
            let fd_r = numeric_slope(SeriesKind::AbsSin, n, x, delta, Side::Right);
            let fd_l = numeric_slope(SeriesKind::AbsSin, n, x, delta, Side::Left);
            // Truncation O(n^2 delta) plus value-rounding O(eps/delta).
            let tol = PI * PI * (n * n) as f64 * delta + 1e-5;
            assert!(
                (fd_r - rep.right_slope).abs() < tol,
                "right at n={n}, {p}/{q}"
            );
            assert!(
                (fd_l - rep.left_slope).abs() < tol,
                "left at n={n}, {p}/{q}"
            );
        }
    }

    #[test]
    fn strict_min_sampling_examples() {
        let deltas = [1e-3, 1e-4, 1e-5];
        assert!(is_strict_min_sampled(
            SeriesKind::AbsSin,
            4,
            rat(1, 2),
            &deltas
        ));
        assert!(!is_strict_min_sampled(
            SeriesKind::AbsSin,
            1,
            rat(1, 2),
            &deltas
        ));
    }

    #[test]
    fn sampling_at_q_squared() {
        // n = q^2 makes every rational a strict minimum. Deltas must stay
        // inside the dominance radius 2B/(pi n^2), which shrinks like q^-3;
        // fixed deltas stop qualifying around q = 13.
        for q in 2..=30i64 {
            let n = (q * q) as u64;
            let radius = 2.0 * q as f64 / (PI * (n * n) as f64);
            let deltas = [radius / 4.0, radius / 16.0, radius / 64.0];
            for p in 1..q {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                assert!(
                    is_strict_min_sampled(SeriesKind::AbsSin, n, rat(p, q), &deltas),
                    "sampling rejects minimum at {p}/{q}, n={n}"
                );
            }
        }
    }
}
