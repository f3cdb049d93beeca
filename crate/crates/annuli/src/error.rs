//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid geometry: require 0 < a < b < inf and d >= 2 (got a={a}, b={b}, d={d})")]
    InvalidGeometry { a: f64, b: f64, d: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "conformal class {r} below proven bracket validity {required} (use force to scan anyway)"
    )]
    BelowProvenBracket { r: f64, required: f64 },

    #[error("no sign change found while bracketing a secular zero in ({lo}, {hi})")]
    NoBracket { lo: f64, hi: f64 },

    #[error("parameter regime exited during root finding: {0}")]
    RegimeExit(String),

    #[error("eigenvalue not localized by secular theory (assumption II); proven lower bound {lower_bound}")]
    NotLocalized { lower_bound: f64 },

    #[error("resonant weight exponent (denominator {0} within guard band)")]
    ResonantExponent(f64),

    #[error("inverse iteration failed to converge after {0} iterations")]
    NoConvergence(usize),

    #[error("factorization breakdown at shift {0}")]
    FactorizationBreakdown(f64),

    #[error("hypothesis violated: {0} (use force to evaluate anyway)")]
    HypothesisViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
