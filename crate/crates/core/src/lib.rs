//! Executable infinitesimal procedures over a truncated Levi-Civita field.

pub mod calculus;
pub mod crofton;
pub mod curvature;
pub mod curve;
pub mod exec;
pub mod expr;
pub mod lc;
pub mod quadrature;
pub mod rng;

pub use exec::Execution;
pub use expr::{parse, Expr};
pub use lc::{Exponent, LcNumber, TruncationContext};
