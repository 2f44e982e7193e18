use crate::rationals::MAX_DENOMINATOR;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error(
        "denominator out of range: |q| must be between {min} and {MAX_DENOMINATOR}, got {got}"
    )]
    DenominatorOutOfRange { min: i64, got: i64 },

    #[error("invalid grid: need from < to (finite) and points >= 2, got from={from}, to={to}, points={points}")]
    InvalidGrid { from: f64, to: f64, points: usize },

    #[error("evaluation budget exceeded: {required} term evaluations > budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("probe spacing {delta} too large at n={n}: quadratic terms would swamp the cusp (need delta * n^2 * pi^2 / 2 < pi * max(B,1))")]
    ProbeSpacingTooLarge { delta: f64, n: u64 },

    #[error("threshold undefined for the |cos| series at {num}/{den}: odd denominators never accumulate cusp terms")]
    NoCuspGrowth { num: i64, den: i64 },

    #[error("threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),
}
