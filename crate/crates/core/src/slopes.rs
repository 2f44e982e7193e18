//! Exact one-sided derivative calculus at reduced rationals.
//!
//! Near x = p/q the n-term partial sum expands as
//!
//! ```text
//! f_n(p/q + e) - f_n(p/q) = pi * e * A  +  pi * |e| * B  +  O(e^2)
//! ```
//!
//! where `A` is the smooth coefficient (sum of per-term slope contributions
//! from terms that are differentiable at p/q) and `B` counts the terms that
//! kink there. Each kinking term contributes exactly `pi * |e|`, so the
//! one-sided slopes are `pi * (A - B)` on the left and `pi * (A + B)` on the
//! right, and a strict local minimum is certified by `B > |A|`.
//!
//! Everything here works on exact integer residues: `sin(k pi p / q)` has the
//! sign of `k p mod 2q` relative to q, no floating point needed for signs or
//! cusp counts. The smooth coefficient costs O(q) independent of n because a
//! full period of q consecutive terms sums to zero.

use std::f64::consts::PI;

use crate::error::Error;
use crate::kahan::KahanSum;
use crate::rationals::{mod_inverse, Rational};
use crate::series::{eval_at_rational, eval_point, SeriesKind};

/// First-order verdict at a rational point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// left slope < 0 < right slope: the cusp count beats the smooth drift.
    StrictMin,
    /// left slope > 0 > right slope. The first-order calculus never produces
    /// this (cusps only open upward); sampling can, at smooth maxima.
    StrictMax,
    /// Both one-sided slopes share a sign; the function passes through.
    NotExtremum,
    /// No kinking terms and a vanishing smooth coefficient; first order is
    /// silent and only sampling (second order) can decide.
    SmoothStationary,
    /// |A| and B agree to within tolerance; declines to certify either way.
    Indeterminate,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::StrictMin => "StrictMin",
            Classification::StrictMax => "StrictMax",
            Classification::NotExtremum => "NotExtremum",
            Classification::SmoothStationary => "SmoothStationary",
            Classification::Indeterminate => "Indeterminate",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One-sided slope decomposition at a rational point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeReport {
    /// Smooth coefficient A.
    pub smooth_coeff: f64,
    /// Cusp count B: number of terms k <= n kinking at the point.
    pub cusp_count: u64,
    /// `pi * (A - B)`.
    pub left_slope: f64,
    /// `pi * (A + B)`.
    pub right_slope: f64,
    pub classification: Classification,
}

/// Strict-minimum onset for one rational point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    /// Smallest n classified StrictMin.
    pub first_n: u64,
    /// Smallest n0 such that StrictMin holds for every n >= n0.
    pub stable_n: u64,
    /// q^2, the guaranteed upper bound for stable_n (|sin| kind).
    pub q_squared: i64,
    /// q^2 / pi, the asymptotically sharp scale for stable_n.
    pub sharp_estimate: f64,
}

impl ThresholdReport {
    /// stable_n / q^2; tends to 1/pi for the worst p as q grows.
    pub fn ratio(&self) -> f64 {
        self.stable_n as f64 / self.q_squared as f64
    }
}

/// Scale-aware classification tolerance: A accumulates at most q unit-size
/// floating additions, so 1e-9 * q sits far above that noise and far below
/// the pi-size gap guaranteed once n >= q^2.
pub fn default_classification_tol(r: Rational) -> f64 {
    1e-9 * r.den() as f64
}

/// Exact sign of `sin(k pi p / q)` from the residue `k p mod 2q`.
///
/// No floating point: the residue lands in [0, 2q), and the sign is +1 below
/// q, 0 at 0 or q, and -1 above q.
pub fn sign_sin(k: u64, r: Rational) -> i32 {
    let r = r.mod_one();
    let q = r.den() as i128;
    let rho = (k as i128 % (2 * q)) * r.num() as i128 % (2 * q);
    if rho == 0 || rho == q {
        0
    } else if rho < q {
        1
    } else {
        -1
    }
}

/// Exact sign of `cos(k pi p / q)` from the residue `k p mod 2q`:
/// zero iff `2 rho = q (mod 2q)`, positive on [0, q/2) and (3q/2, 2q).
pub fn sign_cos(k: u64, r: Rational) -> i32 {
    let r = r.mod_one();
    let q = r.den() as i128;
    let rho = (k as i128 % (2 * q)) * r.num() as i128 % (2 * q);
    let two = 2 * rho;
    if two == q || two == 3 * q {
        0
    } else if two < q || two > 3 * q {
        1
    } else {
        -1
    }
}

/// Per-term slope contribution of term k at p/q.
///
/// AbsSin: `sgn(sin(k pi p/q)) * cos(k pi p/q)`, which collapses to
/// `cos((k p mod q) pi / q)` off cusp indices and 0 on them.
/// AbsCos: `-sgn(cos(k pi p/q)) * sin(k pi p/q)`, 0 on its cusp indices.
/// The sign comes from exact residues; the magnitude from one trig call on an
/// argument in [0, pi).
pub fn coeff(k: u64, r: Rational, kind: SeriesKind) -> f64 {
    let r = r.mod_one();
    let q = r.den();
    match kind {
        SeriesKind::AbsSin => {
            let rho = (k as i128 % q as i128) * r.num() as i128 % q as i128;
            if rho == 0 {
                0.0
            } else {
                (rho as f64 * PI / q as f64).cos()
            }
        }
        SeriesKind::AbsCos => {
            let qq = 2 * q as i128;
            let rho = (k as i128 % qq) * r.num() as i128 % qq;
            let two = 2 * rho;
            if two == q as i128 || two == 3 * q as i128 {
                return 0.0;
            }
            let cos_sign = if two < q as i128 || two > 3 * q as i128 {
                1.0
            } else {
                -1.0
            };
            let sin_mag = ((rho % q as i128) as f64 * PI / q as f64).sin();
            let sin_val = if rho < q as i128 { sin_mag } else { -sin_mag };
            -cos_sign * sin_val
        }
    }
}

/// Smooth coefficient `A(n) = sum_{k=1..n} coeff(k)`.
///
/// Any q consecutive terms sum to zero (k -> k*p permutes the residues and
/// the cosine values over a period cancel in mirror pairs), so the result
/// equals the partial sum up to `n mod q`: cost O(q), independent of n.
pub fn smooth_coeff_a(n: u64, r: Rational, kind: SeriesKind) -> f64 {
    let r = r.mod_one();
    let q = r.den() as u64;
    let mut acc = KahanSum::new();
    for k in 1..=(n % q) {
        acc.add(coeff(k, r, kind));
    }
    acc.value()
}

/// `A` as a function of the residue class of n: entry rho holds the value of
/// [`smooth_coeff_a`] for every n with `n mod q == rho`. Entry 0 is exactly
/// the full-period sum restarted, i.e. 0.
pub fn smooth_coeff_profile(r: Rational, kind: SeriesKind) -> Vec<f64> {
    let r = r.mod_one();
    let q = r.den() as usize;
    let mut profile = vec![0.0; q];
    let mut acc = KahanSum::new();
    for (rho, slot) in profile.iter_mut().enumerate().skip(1) {
        acc.add(coeff(rho as u64, r, kind));
        *slot = acc.value();
    }
    profile
}

/// Smallest k >= 1 with `cos(k pi p / q) = 0`, for even q. The cusp indices
/// of the |cos| series are exactly `k0, k0 + q, k0 + 2q, ...`.
fn cos_first_cusp(r: Rational) -> u64 {
    let (p, q) = (r.num(), r.den());
    debug_assert!(q % 2 == 0);
    let k0 = (mod_inverse(p, q) as i128 * (q / 2) as i128).rem_euclid(q as i128) as u64;
    if k0 == 0 {
        q as u64
    } else {
        k0
    }
}

/// Number of terms k <= n sitting exactly on a kink at p/q.
///
/// AbsSin: exactly `floor(n / q)`. AbsCos: solutions of `2 k p = q (mod 2q)`,
/// which exist only for even q; zero for odd q.
pub fn cusp_count_b(n: u64, r: Rational, kind: SeriesKind) -> u64 {
    let r = r.mod_one();
    let q = r.den();
    match kind {
        SeriesKind::AbsSin => n / q as u64,
        SeriesKind::AbsCos => {
            if q % 2 == 1 {
                return 0;
            }
            let k0 = cos_first_cusp(r);
            if n < k0 {
                0
            } else {
                (n - k0) / q as u64 + 1
            }
        }
    }
}

fn classify(a: f64, b: u64, tol: f64) -> Classification {
    let abs_a = a.abs();
    let b_f = b as f64;
    if b == 0 {
        if abs_a <= tol {
            Classification::SmoothStationary
        } else {
            Classification::NotExtremum
        }
    } else if (abs_a - b_f).abs() <= tol {
        Classification::Indeterminate
    } else if b_f > abs_a {
        Classification::StrictMin
    } else {
        Classification::NotExtremum
    }
}

/// Full one-sided slope report at p/q.
///
/// `tol` guards the comparisons of |A| against B and against zero; use
/// [`default_classification_tol`] unless you have a reason not to.
pub fn one_sided_slopes(n: u64, r: Rational, kind: SeriesKind, tol: f64) -> SlopeReport {
    let a = smooth_coeff_a(n, r, kind);
    let b = cusp_count_b(n, r, kind);
    SlopeReport {
        smooth_coeff: a,
        cusp_count: b,
        left_slope: PI * (a - b as f64),
        right_slope: PI * (a + b as f64),
        classification: classify(a, b, tol),
    }
}

/// Default probe spacing for [`sampled_classify`]: `1 / (4 n q)`, capped at
/// half the dominance radius `2 max(B,1) / (pi n^2)` so the precondition
/// holds even when no cusp terms are present (B = 0, where the cap bites
/// once n exceeds about `8q/pi`).
pub fn default_probe_spacing(n: u64, r: Rational, kind: SeriesKind) -> f64 {
    let r = r.mod_one();
    let b = cusp_count_b(n, r, kind).max(1) as f64;
    let plain = 1.0 / (4.0 * n as f64 * r.den() as f64);
    plain.min(b / (PI * (n as f64).powi(2)))
}

/// Second-order fallback classification by direct sampling.
///
/// Compares the series at `p/q +- j*delta` for j = 1..probes against the
/// value at p/q: StrictMin if every probe is higher, StrictMax if every probe
/// is lower, Indeterminate otherwise. `delta` must keep the quadratic
/// remainder subdominant: `delta * n^2 * pi^2 / 2 < pi * max(B, 1)`.
pub fn sampled_classify(
    n: u64,
    r: Rational,
    kind: SeriesKind,
    delta: f64,
    probes: u32,
) -> Result<Classification, Error> {
    let b = cusp_count_b(n, r, kind);
    let dominance = PI * (b.max(1)) as f64;
    if delta.is_nan() || delta <= 0.0 || delta * (n as f64).powi(2) * PI * PI / 2.0 >= dominance {
        return Err(Error::ProbeSpacingTooLarge { delta, n });
    }
    let probes = probes.max(2);
    let r = r.mod_one();
    let x0 = r.to_f64();
    let center = eval_at_rational(kind, n, r);
    let mut above = 0u32;
    let mut below = 0u32;
    for j in 1..=probes {
        for sign in [-1.0, 1.0] {
            let v = eval_point(kind, n, x0 + sign * j as f64 * delta);
            if v > center {
                above += 1;
            } else if v < center {
                below += 1;
            }
        }
    }
    let total = 2 * probes;
    Ok(if above == total {
        Classification::StrictMin
    } else if below == total {
        Classification::StrictMax
    } else {
        Classification::Indeterminate
    })
}

/// Strict-minimum onset at p/q.
///
/// `first_n` comes from an increasing scan; `stable_n` is computed exactly by
/// residue analysis: A depends only on `n mod q` while B grows with
/// `floor(n / q)`, so each residue class has a minimal multiple beyond which
/// the minimum is certified, and `stable_n` is one past the last failure.
///
/// The certification is conservative: `B > |A|` is decided as
/// `B >= floor(|A| + tol) + 1`, so an |A| within tolerance of an integer
/// defers to the next larger n rather than risking a false certificate.
///
/// Integer points (q = 1) are strict minima of the |sin| series for every
/// n >= 1 (A = 0, B = n). The |cos| series never accumulates cusp terms at
/// odd denominators, so no threshold exists there and
/// [`Error::NoCuspGrowth`] is returned.
pub fn threshold(r: Rational, kind: SeriesKind) -> Result<ThresholdReport, Error> {
    let r = r.mod_one();
    let q = r.den();
    if kind == SeriesKind::AbsCos && q % 2 == 1 {
        return Err(Error::NoCuspGrowth {
            num: r.num(),
            den: q,
        });
    }
    if q == 1 {
        return Ok(ThresholdReport {
            first_n: 1,
            stable_n: 1,
            q_squared: 1,
            sharp_estimate: 1.0 / PI,
        });
    }
    let tol = default_classification_tol(r);
    let profile = smooth_coeff_profile(r, kind);
    let k0 = match kind {
        SeriesKind::AbsSin => None,
        SeriesKind::AbsCos => Some(cos_first_cusp(r)),
    };
    let cusp_count = |n: u64| -> u64 {
        match k0 {
            None => n / q as u64,
            Some(k0) => {
                if n < k0 {
                    0
                } else {
                    (n - k0) / q as u64 + 1
                }
            }
        }
    };

    let mut last_fail = 0u64;
    for (rho, a) in profile.iter().enumerate() {
        let need = (a.abs() + tol).floor() as i64 + 1;
        // B(mq + rho) = m, plus 1 for the cos kind once rho passes k0.
        let extra = match k0 {
            Some(k0) if rho as u64 >= k0 => 1,
            _ => 0,
        };
        let m_fail = need - extra - 1;
        if m_fail >= 0 {
            let nf = m_fail as u64 * q as u64 + rho as u64;
            if nf >= 1 {
                last_fail = last_fail.max(nf);
            }
        }
    }
    let stable_n = last_fail + 1;

    let mut first_n = stable_n;
    for n in 1..stable_n {
        let a = profile[(n % q as u64) as usize];
        if classify(a, cusp_count(n), tol) == Classification::StrictMin {
            first_n = n;
            break;
        }
    }

    Ok(ThresholdReport {
        first_n,
        stable_n,
        q_squared: q * q,
        sharp_estimate: (q * q) as f64 / PI,
    })
}

/// Extremes of the smooth coefficient over one period, `n = 1..q`.
///
/// The minimum is bounded below by -q/2 (and in fact by about -q/pi for the
/// worst numerator); the maximum mirrors it.
pub fn partial_sum_extrema(r: Rational, kind: SeriesKind) -> (f64, f64) {
    let profile = smooth_coeff_profile(r, kind);
    let mut min_a = f64::INFINITY;
    let mut max_a = f64::NEG_INFINITY;
    // n = 1..q-1 hit profile[1..]; n = q wraps to the full-period sum, 0.
    for &a in &profile[1..] {
        min_a = min_a.min(a);
        max_a = max_a.max(a);
    }
    min_a = min_a.min(0.0);
    max_a = max_a.max(0.0);
    (min_a, max_a)
}

/// `stable_n((q-1)/q) / q^2` for the |sin| series: the worst-case numerator,
/// tending to 1/pi as q grows.
pub fn sharpness_ratio(q: i64) -> Result<f64, Error> {
    if q < 2 {
        return Err(Error::DenominatorOutOfRange { min: 2, got: q });
    }
    let r = Rational::new(q - 1, q).expect("q >= 2");
    Ok(threshold(r, SeriesKind::AbsSin)?.ratio())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationals::gcd;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn sign_sin_examples() {
        assert_eq!(sign_sin(1, rat(1, 2)), 1);
        assert_eq!(sign_sin(3, rat(1, 3)), 0);
        // Oracle: sign of sin(8 pi / 3) = sin(2 pi / 3) > 0.
        assert_eq!(sign_sin(4, rat(2, 3)), 1);
        assert_eq!((8.0 * PI / 3.0).sin().signum(), 1.0);
    }

    #[test]
    fn sign_matches_floating_oracle() {
        for q in 1..=40i64 {
            for p in 0..q.max(1) {
                if gcd(p as u64, q as u64) != 1 && !(p == 0 && q == 1) {
                    continue;
                }
                let r = rat(p, q);
                for k in 1..=(4 * q as u64 + 3) {
                    let arg = k as f64 * PI * p as f64 / q as f64;
                    let s = arg.sin();
                    let expected = if s.abs() < 1e-9 { 0 } else { s.signum() as i32 };
                    assert_eq!(sign_sin(k, r), expected, "sin sign at k={k}, {p}/{q}");
                    let c = arg.cos();
                    let expected = if c.abs() < 1e-9 { 0 } else { c.signum() as i32 };
                    assert_eq!(sign_cos(k, r), expected, "cos sign at k={k}, {p}/{q}");
                }
            }
        }
    }

    #[test]
    fn sign_cos_examples() {
        assert_eq!(sign_cos(1, rat(1, 2)), 0);
        assert_eq!(sign_cos(1, rat(1, 3)), 1);
        assert_eq!(sign_cos(2, rat(1, 3)), -1);
    }

    #[test]
    fn coeff_examples() {
        assert!((coeff(1, rat(1, 3), SeriesKind::AbsSin) - 0.5).abs() < 1e-12);
        assert!((coeff(2, rat(1, 3), SeriesKind::AbsSin) + 0.5).abs() < 1e-12);
        assert_eq!(coeff(3, rat(1, 3), SeriesKind::AbsSin), 0.0);
        let expected = -(PI / 3.0).sin();
        assert!((coeff(1, rat(1, 3), SeriesKind::AbsCos) - expected).abs() < 1e-12);
    }

    #[test]
    fn coeff_antisymmetry_and_permutation() {
        for q in 2..=60i64 {
            for p in 1..q {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let r = rat(p, q);
                for k in 1..q as u64 {
                    let lhs = coeff(q as u64 - k, r, SeriesKind::AbsSin);
                    let rhs = -coeff(k, r, SeriesKind::AbsSin);
                    assert!((lhs - rhs).abs() < 1e-12, "antisymmetry at k={k}, {p}/{q}");
                }
                // Multiset over one period = {cos(r pi / q)} plus one zero.
                let mut got: Vec<f64> = (1..=q as u64)
                    .map(|k| coeff(k, r, SeriesKind::AbsSin))
                    .collect();
                let mut want: Vec<f64> = (1..q).map(|j| (j as f64 * PI / q as f64).cos()).collect();
                want.push(0.0);
                got.sort_by(f64::total_cmp);
                want.sort_by(f64::total_cmp);
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn smooth_coeff_examples() {
        assert!(smooth_coeff_a(5, rat(1, 3), SeriesKind::AbsSin).abs() < 1e-12);
        assert!((smooth_coeff_a(7, rat(1, 3), SeriesKind::AbsSin) - 0.5).abs() < 1e-12);
        // Full periods vanish for both kinds.
        for q in 2..=50i64 {
            for p in [1, q - 1] {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
                    for m in 1..=3u64 {
                        let a = smooth_coeff_a(m * q as u64, rat(p, q), kind);
                        assert!(
                            a.abs() <= 1e-9 * q as f64,
                            "A({m}q) = {a} at {p}/{q} {kind}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn profile_agrees_with_direct_sum() {
        for (p, q) in [(1, 5), (3, 7), (5, 13), (7, 18)] {
            let r = rat(p, q);
            for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
                let profile = smooth_coeff_profile(r, kind);
                for n in 1..=(3 * q as u64) {
                    let direct: f64 = (1..=n).map(|k| coeff(k, r, kind)).sum();
                    let via = profile[(n % q as u64) as usize];
                    assert!((direct - via).abs() < 1e-9, "n={n} at {p}/{q} {kind}");
                }
            }
        }
    }

    #[test]
    fn cusp_count_examples() {
        assert_eq!(cusp_count_b(7, rat(1, 3), SeriesKind::AbsSin), 2);
        assert_eq!(cusp_count_b(10, rat(1, 2), SeriesKind::AbsCos), 5);
        assert_eq!(cusp_count_b(100, rat(1, 3), SeriesKind::AbsCos), 0);
    }

    #[test]
    fn cusp_count_matches_direct_scan() {
        for q in 1..=40i64 {
            for p in 0..q.max(1) {
                if q > 1 && gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let r = rat(p, q);
                let n = 4 * q as u64 + 3;
                let sin_scan = (1..=n).filter(|&k| sign_sin(k, r) == 0).count() as u64;
                assert_eq!(
                    cusp_count_b(n, r, SeriesKind::AbsSin),
                    sin_scan,
                    "{p}/{q} sin"
                );
                let cos_scan = (1..=n).filter(|&k| sign_cos(k, r) == 0).count() as u64;
                assert_eq!(
                    cusp_count_b(n, r, SeriesKind::AbsCos),
                    cos_scan,
                    "{p}/{q} cos"
                );
            }
        }
    }

    #[test]
    fn one_sided_slope_examples() {
        let tol = default_classification_tol(rat(1, 2));
        let rep = one_sided_slopes(2, rat(1, 2), SeriesKind::AbsSin, tol);
        assert!(rep.smooth_coeff.abs() < 1e-12);
        assert_eq!(rep.cusp_count, 1);
        assert!((rep.left_slope + PI).abs() < 1e-9);
        assert!((rep.right_slope - PI).abs() < 1e-9);
        assert_eq!(rep.classification, Classification::StrictMin);

        let rep = one_sided_slopes(1, rat(1, 2), SeriesKind::AbsSin, tol);
        assert_eq!(rep.cusp_count, 0);
        assert_eq!(rep.classification, Classification::SmoothStationary);

        let rep = one_sided_slopes(9, rat(1, 3), SeriesKind::AbsSin, 1e-9 * 3.0);
        assert_eq!(rep.cusp_count, 3);
        assert!((rep.left_slope + 3.0 * PI).abs() < 1e-8);
        assert!((rep.right_slope - 3.0 * PI).abs() < 1e-8);
        assert_eq!(rep.classification, Classification::StrictMin);

        for n in [1u64, 4, 7, 10] {
            let rep = one_sided_slopes(n, rat(1, 3), SeriesKind::AbsCos, 1e-9 * 3.0);
            assert_eq!(rep.cusp_count, 0, "odd q never kinks the |cos| series");
            if n % 3 == 1 {
                assert!((rep.smooth_coeff - (-(PI / 3.0).sin())).abs() < 1e-12);
                assert_eq!(rep.classification, Classification::NotExtremum);
            }
        }
    }

    #[test]
    fn slope_jump_is_2_pi_b() {
        for (p, q, n) in [(1, 2, 7), (2, 5, 31), (5, 13, 200), (7, 18, 1000)] {
            let rep = one_sided_slopes(n, rat(p, q), SeriesKind::AbsSin, 1e-9 * q as f64);
            let jump = rep.right_slope - rep.left_slope;
            assert!((jump - 2.0 * PI * rep.cusp_count as f64).abs() < 1e-9);
            assert!(jump >= 0.0);
        }
    }

    #[test]
    fn threshold_examples() {
        let t = threshold(rat(1, 2), SeriesKind::AbsSin).unwrap();
        assert_eq!((t.first_n, t.stable_n, t.q_squared), (2, 2, 4));

        let t = threshold(rat(1, 3), SeriesKind::AbsSin).unwrap();
        assert_eq!((t.first_n, t.stable_n, t.q_squared), (3, 3, 9));

        // Integer points: strict minimum from the very first term.
        let t = threshold(rat(0, 1), SeriesKind::AbsSin).unwrap();
        assert_eq!((t.first_n, t.stable_n, t.q_squared), (1, 1, 1));
        let t = threshold(rat(1, 1), SeriesKind::AbsSin).unwrap();
        assert_eq!((t.first_n, t.stable_n), (1, 1));

        assert!(matches!(
            threshold(rat(1, 3), SeriesKind::AbsCos),
            Err(Error::NoCuspGrowth { .. })
        ));
    }

    /// Brute-force oracle: classify every n up to q^2 + q and take one past
    /// the last non-minimum.
    fn brute_threshold(r: Rational, kind: SeriesKind) -> (u64, u64) {
        let q = r.den() as u64;
        let tol = default_classification_tol(r);
        let mut first = None;
        let mut last_bad = 0;
        for n in 1..=(q * q + q) {
            let c = one_sided_slopes(n, r, kind, tol).classification;
            if c == Classification::StrictMin {
                first.get_or_insert(n);
            } else {
                last_bad = n;
            }
        }
        (first.unwrap(), last_bad + 1)
    }

    #[test]
    fn threshold_matches_brute_force() {
        for q in 2..=16i64 {
            for p in 1..q {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let r = rat(p, q);
                let t = threshold(r, SeriesKind::AbsSin).unwrap();
                let (bf, bs) = brute_threshold(r, SeriesKind::AbsSin);
                assert_eq!(
                    (t.first_n, t.stable_n),
                    (bf, bs),
                    "sin threshold at {p}/{q}"
                );
                assert!(t.first_n <= t.stable_n);
                assert!(t.stable_n <= t.q_squared as u64);

                if q % 2 == 0 {
                    let t = threshold(r, SeriesKind::AbsCos).unwrap();
                    let (bf, bs) = brute_threshold(r, SeriesKind::AbsCos);
                    assert_eq!(
                        (t.first_n, t.stable_n),
                        (bf, bs),
                        "cos threshold at {p}/{q}"
                    );
                }
            }
        }
    }

    #[test]
    fn partial_sum_extrema_examples() {
        let (min_a, max_a) = partial_sum_extrema(rat(4, 5), SeriesKind::AbsSin);
        let expected = -((PI / 5.0).cos() + (2.0 * PI / 5.0).cos());
        assert!(
            (min_a - expected).abs() < 1e-12,
            "min {min_a} vs {expected}"
        );
        assert!((min_a + 1.118).abs() < 1e-3);
        assert!(max_a.abs() < 1e-12);

        for q in 2..=60i64 {
            for p in 1..q {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let (lo, hi) = partial_sum_extrema(rat(p, q), SeriesKind::AbsSin);
                let bound = q as f64 / 2.0 + 1e-9 * q as f64;
                assert!(lo >= -bound, "min_A {lo} < -q/2 at {p}/{q}");
                assert!(hi <= bound, "max_A {hi} > q/2 at {p}/{q}");
            }
        }
    }

    #[test]
    fn max_partial_cosine_tracks_q_over_pi() {
        let (_, max_a) = partial_sum_extrema(rat(1, 500), SeriesKind::AbsSin);
        let target = 500.0 / PI;
        assert!(
            (max_a / target - 1.0).abs() < 0.05,
            "max_A {max_a} vs q/pi {target}"
        );
    }

    #[test]
    fn sharpness_examples() {
        assert!((sharpness_ratio(2).unwrap() - 0.5).abs() < 1e-12);
        let r100 = sharpness_ratio(100).unwrap();
        assert!((r100 - 1.0 / PI).abs() < 0.05, "ratio at q=100: {r100}");
        let r200 = sharpness_ratio(200).unwrap();
        assert!((r200 * PI - 1.0).abs() < 0.05, "ratio at q=200: {r200}");
        assert!(sharpness_ratio(1).is_err());
    }

    #[test]
    fn sampled_classify_examples() {
        let c = sampled_classify(2, rat(1, 2), SeriesKind::AbsSin, 1e-4, 3).unwrap();
        assert_eq!(c, Classification::StrictMin);
        let c = sampled_classify(1, rat(1, 2), SeriesKind::AbsSin, 1e-4, 3).unwrap();
        assert_eq!(c, Classification::StrictMax);
        let c = sampled_classify(6, rat(1, 3), SeriesKind::AbsCos, 1e-5, 3).unwrap();
        assert_eq!(c, Classification::StrictMax);

        // Spacing so large the quadratic remainder could dominate: refused.
        assert!(matches!(
            sampled_classify(1000, rat(1, 2), SeriesKind::AbsSin, 1.0, 3),
            Err(Error::ProbeSpacingTooLarge { .. })
        ));

        // The default spacing always satisfies the precondition.
        for n in [1u64, 7, 64, 500, 9999] {
            for (p, q) in [(1i64, 2i64), (1, 3), (5, 13)] {
                for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
                    let d = default_probe_spacing(n, rat(p, q), kind);
                    assert!(sampled_classify(n, rat(p, q), kind, d, 2).is_ok());
                }
            }
        }
    }

    #[test]
    fn cosine_parity_of_cusp_counts() {
        for q in 2..=30i64 {
            for p in 1..q {
                if gcd(p as u64, q as u64) != 1 {
                    continue;
                }
                let r = rat(p, q);
                let b = cusp_count_b(q as u64, r, SeriesKind::AbsCos);
                if q % 2 == 1 {
                    assert_eq!(b, 0, "odd q={q} must have no cos cusps");
                } else {
                    assert!(b >= 1, "even q={q} must kink by n=q");
                }
            }
        }
    }
}
