//! Truncated Levi-Civita numbers: a computable ordered field containing
//! infinitesimals, with the standard-part map back to the reals.
//!
//! Numbers are finite series `Σ c_q ε^q` over rational exponents. Every
//! operation truncates relative to the leading exponent of its result, so
//! infinitesimal and infinite quantities carry the same relative precision.

mod analytic;
mod exponent;
mod number;
mod text;

use thiserror::Error;

pub use analytic::AnalyticFn;
pub use exponent::Exponent;
pub use number::LcNumber;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcError {
    #[error("non-finite real {0} cannot be embedded")]
    NonFinite(f64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("infinite number has no standard part")]
    InfiniteNumber,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid truncation context: {0}")]
    InvalidContext(String),
    #[error("cannot parse number at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Precision policy shared by every arithmetic operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationContext {
    term_budget: usize,
    exponent_window: Exponent,
}

impl Default for TruncationContext {
    fn default() -> Self {
        Self { term_budget: 32, exponent_window: Exponent::integer(8) }
    }
}

impl TruncationContext {
    pub fn new(term_budget: usize, exponent_window: Exponent) -> Result<Self, LcError> {
        if term_budget == 0 {
            return Err(LcError::InvalidContext("term budget must be positive".into()));
        }
        if !exponent_window.is_positive() {
            return Err(LcError::InvalidContext(format!("window {exponent_window} must be positive")));
        }
        Ok(Self { term_budget, exponent_window })
    }

    pub fn term_budget(&self) -> usize {
        self.term_budget
    }

    pub fn exponent_window(&self) -> Exponent {
        self.exponent_window
    }

    /// Drops terms beyond `leading + window` and beyond the term budget,
    /// lowering the known precision whenever something is discarded.
    pub fn apply(&self, x: LcNumber) -> LcNumber {
        let Some(lead) = x.leading_exponent() else {
            return x;
        };
        let limit = lead + self.exponent_window;
        let mut known = None;
        if x.terms().last().is_some_and(|t| t.0 > limit) {
            known = Some(limit);
        }
        let mut x = x.with_known(known);
        if x.terms().len() > self.term_budget {
            let last_kept = x.terms()[self.term_budget - 1].0;
            x = x.with_known(Some(last_kept));
        }
        x
    }
}
