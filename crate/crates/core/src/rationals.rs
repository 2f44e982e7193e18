//! Reduced-fraction arithmetic, Farey enumeration, and continued-fraction
//! approximation.
//!
//! Cusps of the series live at reduced rationals p/q, so everything downstream
//! (slope calculus, thresholds, cusp matching) starts here. All arithmetic is
//! 64-bit; denominators are capped at [`MAX_DENOMINATOR`] so residue products
//! fit in an `i64` after reducing indices modulo `2q`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Largest denominator accepted by the enumeration/search entry points.
///
/// With q <= 1e6 every product `(k mod 2q) * p` stays below 2e12, far from
/// `i64` overflow.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// A fraction p/q in lowest terms with q >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    /// Builds the unique reduced representative with positive denominator.
    ///
    /// `Rational::new(10, 4)` is 5/2, `Rational::new(-3, -6)` is 1/2.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let sign = if (num < 0) != (den < 0) { -1 } else { 1 };
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd(n, d);
        Ok(Rational {
            num: sign * (n / g) as i64,
            den: (d / g) as i64,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Folds into the canonical range [0, 1) by subtracting the integer part.
    ///
    /// The series are 1-periodic, so cusp work only ever needs this
    /// representative.
    pub fn mod_one(&self) -> Rational {
        Rational {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    /// Absolute distance to a real point.
    pub fn dist(&self, x: f64) -> f64 {
        (x - self.to_f64()).abs()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Cross-multiplication in i128 cannot overflow for i64 fields.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.max(1)
}

/// Inverse of `a` modulo `m` (extended Euclid); requires gcd(a, m) = 1, m >= 1.
pub(crate) fn mod_inverse(a: i64, m: i64) -> i64 {
    debug_assert!(m >= 1);
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    debug_assert_eq!(old_r, 1, "mod_inverse requires coprime arguments");
    old_s.rem_euclid(m)
}

/// All reduced fractions in [0, 1] with denominator <= `q_max`, ascending.
///
/// This is the Farey sequence F_{q_max}; its length is 1 + sum of phi(q) for
/// q <= q_max. Generated by the mediant next-term recurrence, so neighbours
/// a/b, c/d always satisfy bc - ad = 1.
pub fn farey(q_max: i64) -> Result<Vec<Rational>, Error> {
    if !(1..=MAX_DENOMINATOR).contains(&q_max) {
        return Err(Error::DenominatorOutOfRange { min: 1, got: q_max });
    }
    let mut out = vec![Rational { num: 0, den: 1 }];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, q_max);
    while c <= q_max {
        let k = (q_max + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
        out.push(Rational { num: a, den: b });
    }
    Ok(out)
}

/// A simple continued fraction a0; a1, a2, ... with a_i >= 1 for i >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// Convergents p_i/q_i from the standard recurrence, in lowest terms.
    ///
    /// Stops early if a convergent would overflow i64.
    pub fn convergents(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.terms.len());
        let (mut p_prev, mut q_prev) = (0i128, 1i128);
        let (mut p, mut q) = (1i128, 0i128);
        for &a in &self.terms {
            let p_next = a as i128 * p + p_prev;
            let q_next = a as i128 * q + q_prev;
            if p_next.unsigned_abs() > i64::MAX as u128 || q_next > i64::MAX as i128 {
                break;
            }
            (p_prev, q_prev) = (p, q);
            (p, q) = (p_next, q_next);
            out.push(Rational {
                num: p as i64,
                den: q as i64,
            });
        }
        out
    }

    /// The final convergent, i.e. the rational value of the whole expansion.
    pub fn value(&self) -> Option<Rational> {
        self.convergents().into_iter().last()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.split_first() {
            None => write!(f, "[]"),
            Some((a0, rest)) => {
                write!(f, "[{a0}")?;
                for (i, a) in rest.iter().enumerate() {
                    if i == 0 {
                        write!(f, "; {a}")?;
                    } else {
                        write!(f, ", {a}")?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

/// Default residual tolerance for [`cf_expand`]: an f64 input cannot support
/// a meaningfully deeper expansion.
pub const CF_DEFAULT_TOL: f64 = 1e-12;

/// Standard continued-fraction expansion of `x`, truncated at `max_terms`
/// terms or when the residual fractional part drops below `tol`.
pub fn cf_expand(x: f64, max_terms: usize, tol: f64) -> ContinuedFraction {
    let max_terms = max_terms.max(1);
    let a0 = x.floor();
    let mut terms = vec![a0 as i64];
    let mut frac = x - a0;
    while terms.len() < max_terms && frac >= tol {
        let y = 1.0 / frac;
        let a = y.floor();
        terms.push(a as i64);
        frac = y - a;
    }
    ContinuedFraction { terms }
}

/// The reduced p/q with q <= `q_max` minimizing |x - p/q|.
///
/// Ties break towards smaller q, then smaller p; with ascending enumeration
/// and strict improvement both rules fall out naturally.
pub fn best_approx(x: f64, q_max: i64) -> Result<Rational, Error> {
    if !(1..=MAX_DENOMINATOR).contains(&q_max) {
        return Err(Error::DenominatorOutOfRange { min: 1, got: q_max });
    }
    let mut best = Rational {
        num: x.round() as i64,
        den: 1,
    };
    let mut best_dist = best.dist(x);
    for q in 1..=q_max {
        let p_lo = (x * q as f64).floor() as i64;
        for p in [p_lo, p_lo + 1] {
            let cand = Rational::new(p, q).expect("q >= 1");
            let d = cand.dist(x);
            if d < best_dist {
                best = cand;
                best_dist = d;
            }
        }
    }
    Ok(best)
}

/// Approximability diagnostics along the convergents of `x`.
///
/// For each convergent denominator q with 2 <= q <= `q_max`, reports
/// `(q, q * dist(q * x, nearest integer))`. Small values mean x is well
/// approximated at that denominator; a badly approximable number (e.g. the
/// golden ratio) stays near 1/sqrt(5) ~ 0.447 forever.
pub fn approx_quality(x: f64, q_max: i64) -> Result<Vec<(i64, f64)>, Error> {
    if !(1..=MAX_DENOMINATOR).contains(&q_max) {
        return Err(Error::DenominatorOutOfRange { min: 1, got: q_max });
    }
    let cf = cf_expand(x, 64, CF_DEFAULT_TOL);
    let mut out = Vec::new();
    for conv in cf.convergents() {
        let q = conv.den();
        if q < 2 {
            continue;
        }
        if q > q_max {
            break;
        }
        let qx = q as f64 * x;
        out.push((q, q as f64 * (qx - qx.round()).abs()));
    }
    Ok(out)
}
