//! Verification sweeps behind `sincusp verify --suite ...`.
//!
//! Each suite reruns a family of cross-checks at a caller-chosen scale and
//! reports one pass/fail line per check. The oracles are the deliberately
//! naive reference paths from `sincusp::oracle`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sincusp::oracle::{brute_a, numeric_slope, Side};
use sincusp::{
    coeff, default_classification_tol, eval_at_rational, eval_point, one_sided_slopes,
    partial_sum_extrema, smooth_coeff_a, threshold, Classification, Rational, SeriesKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Period-sum zero, coefficient antisymmetry, permutation multiset.
    Identities,
    /// stable_n <= q^2 and StrictMin at n = q^2 for every reduced fraction.
    Theorem,
    /// Worst-case stable_n / q^2 against the 1/pi asymptote.
    Sharpness,
    /// Fast paths against brute-force and finite-difference references.
    Oracle,
}

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn random_coprime(rng: &mut ChaCha8Rng, q: i64) -> i64 {
    loop {
        let p = rng.gen_range(1..q);
        if gcd(p as u64, q as u64) == 1 {
            return p;
        }
    }
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).expect("q >= 1")
}

fn sampled_numerators(rng: &mut ChaCha8Rng, q: i64, extra: usize) -> Vec<i64> {
    let mut ps = vec![1];
    if q > 2 {
        ps.push(q - 1);
    }
    for _ in 0..extra {
        ps.push(random_coprime(rng, q));
    }
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn run(suite: Suite, q_max: i64, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Identities => identities(q_max, seed),
        Suite::Theorem => theorem(q_max),
        Suite::Sharpness => sharpness(q_max),
        Suite::Oracle => oracle(q_max, seed),
    }
}

fn identities(q_max: i64, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut period_worst = (0.0f64, String::new());
    let mut anti_worst = (0.0f64, String::new());
    let mut perm_worst = (0.0f64, String::new());
    let mut pairs = 0usize;

    for q in 2..=q_max {
        for p in sampled_numerators(&mut rng, q, 3) {
            let r = rat(p, q);
            pairs += 1;
            for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
                for m in 1..=3u64 {
                    let a = smooth_coeff_a(m * q as u64, r, kind).abs() / q as f64;
                    if a > period_worst.0 {
                        period_worst = (a, format!("A({m}q) at {r} ({kind})"));
                    }
                }
            }
            let mut values = Vec::with_capacity(q as usize);
            for k in 1..=q as u64 {
                let c = coeff(k, r, SeriesKind::AbsSin);
                if k < q as u64 {
                    let gap = (c + coeff(q as u64 - k, r, SeriesKind::AbsSin)).abs();
                    if gap > anti_worst.0 {
                        anti_worst = (gap, format!("k={k} at {r}"));
                    }
                }
                values.push(c);
            }
            let mut expected: Vec<f64> = (1..q).map(|j| (j as f64 * PI / q as f64).cos()).collect();
            expected.push(0.0);
            values.sort_by(f64::total_cmp);
            expected.sort_by(f64::total_cmp);
            for (v, e) in values.iter().zip(&expected) {
                let gap = (v - e).abs();
                if gap > perm_worst.0 {
                    perm_worst = (gap, format!("at {r}"));
                }
            }
        }
    }

    vec![
        Check {
            name: "period-sum",
            pass: period_worst.0 <= 1e-9,
            detail: format!(
                "worst |A(mq)|/q = {:.3e} over {pairs} fractions ({})",
                period_worst.0, period_worst.1
            ),
        },
        Check {
            name: "antisymmetry",
            pass: anti_worst.0 <= 1e-12,
            detail: format!(
                "worst |c(q-k)+c(k)| = {:.3e} ({})",
                anti_worst.0, anti_worst.1
            ),
        },
        Check {
            name: "permutation-multiset",
            pass: perm_worst.0 <= 1e-12,
            detail: format!(
                "worst multiset gap = {:.3e} ({})",
                perm_worst.0, perm_worst.1
            ),
        },
    ]
}

fn theorem(q_max: i64) -> Vec<Check> {
    let mut fractions = 0usize;
    let mut worst_ratio = 0.0f64;
    let mut failures = String::new();
    for q in 2..=q_max {
        for p in 1..q {
            if gcd(p as u64, q as u64) != 1 {
                continue;
            }
            fractions += 1;
            let r = rat(p, q);
            match threshold(r, SeriesKind::AbsSin) {
                Ok(t) => {
                    worst_ratio = worst_ratio.max(t.ratio());
                    if t.stable_n > t.q_squared as u64 {
                        let _ = write!(failures, " stable({r})={}>{}", t.stable_n, t.q_squared);
                    }
                    let rep = one_sided_slopes(
                        (q * q) as u64,
                        r,
                        SeriesKind::AbsSin,
                        default_classification_tol(r),
                    );
                    if rep.classification != Classification::StrictMin {
                        let _ = write!(failures, " class({r},q^2)={}", rep.classification);
                    }
                }
                Err(e) => {
                    let _ = write!(failures, " threshold({r}): {e}");
                }
            }
        }
    }
    vec![Check {
        name: "theorem",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("stable_n <= q^2 and StrictMin at q^2 for all {fractions} fractions, worst ratio {worst_ratio:.4}")
        } else {
            format!("failures:{failures}")
        },
    }]
}

fn sharpness(q_max: i64) -> Vec<Check> {
    let q = q_max;
    let mut max_ratio = 0.0f64;
    let mut argmax = 1i64;
    for p in 1..q {
        if gcd(p as u64, q as u64) != 1 {
            continue;
        }
        let ratio = threshold(rat(p, q), SeriesKind::AbsSin)
            .expect("sin threshold always exists")
            .ratio();
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = p;
        }
    }
    let mut checks = vec![Check {
        name: "sharpness-bound",
        pass: max_ratio <= 0.5 + 1.0 / q as f64 + 1e-9,
        detail: format!("max stable_n/q^2 = {max_ratio:.6} at p={argmax}, q={q}"),
    }];
    if q >= 50 {
        let tol = if q >= 200 { 0.05 } else { 0.10 };
        checks.push(Check {
            name: "sharpness-asymptote",
            pass: (max_ratio * PI - 1.0).abs() <= tol,
            detail: format!(
                "max ratio {max_ratio:.6} vs 1/pi = {:.6} (tolerance {:.0}%)",
                1.0 / PI,
                tol * 100.0
            ),
        });
    }
    let worst_is_edge = threshold(rat(q - 1, q), SeriesKind::AbsSin)
        .expect("sin threshold")
        .ratio();
    checks.push(Check {
        name: "sharpness-worst-numerator",
        pass: worst_is_edge == max_ratio,
        detail: format!("ratio at p=q-1 is {worst_is_edge:.6}"),
    });
    checks
}

fn oracle(q_max: i64, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q_cap = q_max.max(2);

    let mut a_worst = (0.0f64, String::new());
    for _ in 0..200 {
        let q = rng.gen_range(2..=q_cap);
        let p = random_coprime(&mut rng, q);
        let n = rng.gen_range(1..=20_000u64);
        let kind = if rng.gen_bool(0.5) {
            SeriesKind::AbsSin
        } else {
            SeriesKind::AbsCos
        };
        let fast = smooth_coeff_a(n, rat(p, q), kind);
        let slow = brute_a(n, rat(p, q), kind).expect("within brute budget");
        let gap = (fast - slow).abs() / n as f64;
        if gap > a_worst.0 {
            a_worst = (gap, format!("n={n} at {p}/{q} ({kind})"));
        }
    }

    let delta = 1e-10;
    let mut fd_worst = (0.0f64, String::new());
    for _ in 0..100 {
        let q = rng.gen_range(2..=q_cap.min(50));
        let p = random_coprime(&mut rng, q);
        let n = rng.gen_range(1..=1000u64);
        let r = rat(p, q);
        let rep = one_sided_slopes(n, r, SeriesKind::AbsSin, default_classification_tol(r));
        let x = p as f64 / q as f64;
        let center = eval_point(SeriesKind::AbsSin, n, x);
        let tol = PI * PI * (n * n) as f64 * delta + 32.0 * f64::EPSILON * (1.0 + center) / delta;
        for (side, analytic) in [(Side::Right, rep.right_slope), (Side::Left, rep.left_slope)] {
            let fd = numeric_slope(SeriesKind::AbsSin, n, x, delta, side);
            let rel = (fd - analytic).abs() / tol;
            if rel > fd_worst.0 {
                fd_worst = (rel, format!("n={n} at {p}/{q} {side:?}"));
            }
        }
    }

    let mut eval_worst = (0.0f64, String::new());
    for q in 2..=q_cap.min(50) {
        let p = random_coprime(&mut rng, q);
        for kind in [SeriesKind::AbsSin, SeriesKind::AbsCos] {
            let a = eval_at_rational(kind, 5000, rat(p, q));
            let b = eval_point(kind, 5000, p as f64 / q as f64);
            let gap = (a - b).abs();
            if gap > eval_worst.0 {
                eval_worst = (gap, format!("{p}/{q} ({kind})"));
            }
        }
    }

    let mut bound_worst = (f64::INFINITY, String::new());
    for q in 2..=q_cap {
        let p = random_coprime(&mut rng, q);
        let (min_a, _) = partial_sum_extrema(rat(p, q), SeriesKind::AbsSin);
        let margin = min_a + q as f64 / 2.0;
        if margin < bound_worst.0 {
            bound_worst = (margin, format!("min_A = {min_a:.4} at {p}/{q}"));
        }
    }

    vec![
        Check {
            name: "oracle-smooth-coefficient",
            pass: a_worst.0 <= 1e-9,
            detail: format!("worst |A - brute|/n = {:.3e} ({})", a_worst.0, a_worst.1),
        },
        Check {
            name: "oracle-finite-difference",
            pass: fd_worst.0 <= 1.0,
            detail: format!("worst error/tolerance = {:.3} ({})", fd_worst.0, fd_worst.1),
        },
        Check {
            name: "oracle-rational-evaluation",
            pass: eval_worst.0 <= 1e-9,
            detail: format!(
                "worst |residue - direct| = {:.3e} ({})",
                eval_worst.0, eval_worst.1
            ),
        },
        Check {
            name: "proof-bound",
            pass: bound_worst.0 >= -1e-9,
            detail: format!(
                "smallest margin above -q/2 = {:.4} ({})",
                bound_worst.0, bound_worst.1
            ),
        },
    ]
}
