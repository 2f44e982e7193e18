//! Cusp calculus for the absolute-value trigonometric series
//!
//! ```text
//! f_n(x) = sum_{k=1..n} |sin(k pi x)| / k
//! g_n(x) = sum_{k=1..n} |cos(k pi x)| / k
//! ```
//!
//! Every reduced rational p/q eventually becomes a strict local minimum of
//! f_n: the kink terms (those k with k p/q an integer) each add an upward
//! `pi |e|` to the local expansion while the smooth terms contribute a
//! bounded drift, so once `floor(n/q)` beats that drift the V closes. This
//! crate makes the whole story computable:
//!
//! - [`rationals`]: reduced fractions, Farey enumeration, continued
//!   fractions, best rational approximation.
//! - [`series`]: fast, deterministic evaluation of f_n and g_n at points,
//!   exact rationals, and dense grids.
//! - [`slopes`]: exact one-sided derivatives at rationals, classification,
//!   the strict-minimum threshold and its sharp `q^2 / pi` scale.
//! - [`scanner`]: cusp detection on grids and local-maximum exploration with
//!   approximability diagnostics.
//! - [`oracle`]: naive reference implementations used by the test suites and
//!   the CLI `verify` command.
//!
//! # Quick taste
//!
//! ```
//! use sincusp::{one_sided_slopes, threshold, Rational, SeriesKind};
//!
//! let half = Rational::new(1, 2)?;
//! let report = one_sided_slopes(2, half, SeriesKind::AbsSin, 1e-9);
//! assert_eq!(report.classification.name(), "StrictMin");
//!
//! // 1/2 is a strict local minimum of f_n for every n >= 2 (and q^2 = 4).
//! let t = threshold(half, SeriesKind::AbsSin)?;
//! assert_eq!((t.first_n, t.stable_n), (2, 2));
//! assert!(t.stable_n <= t.q_squared as u64);
//! # Ok::<(), sincusp::Error>(())
//! ```

mod error;
mod kahan;

pub mod oracle;
pub mod rationals;
pub mod scanner;
pub mod series;
pub mod slopes;

pub use error::Error;
pub use rationals::{
    approx_quality, best_approx, cf_expand, farey, ContinuedFraction, Rational, CF_DEFAULT_TOL,
    MAX_DENOMINATOR,
};
pub use scanner::{
    detect_cusps, detect_cusps_in, find_local_maxima, CuspCandidate, CuspMatch, CuspScan,
    MaximumReport,
};
pub use series::{
    eval_at_rational, eval_grid, eval_grid_with_budget, eval_point, GridSpec, SeriesKind,
    DEFAULT_TERM_BUDGET,
};
pub use slopes::{
    coeff, cusp_count_b, default_classification_tol, default_probe_spacing, one_sided_slopes,
    partial_sum_extrema, sampled_classify, sharpness_ratio, sign_cos, sign_sin, smooth_coeff_a,
    smooth_coeff_profile, threshold, Classification, SlopeReport, ThresholdReport,
};

// The guide chapters double as doctests: every ```rust block in book/src is
// compiled and run by `cargo test --doc`, keeping the book in sync with the
// crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/rationals.md")]
    pub struct Rationals;
    #[doc = include_str!("../../../book/src/series.md")]
    pub struct Series;
    #[doc = include_str!("../../../book/src/slopes.md")]
    pub struct Slopes;
    #[doc = include_str!("../../../book/src/scanning.md")]
    pub struct Scanning;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
