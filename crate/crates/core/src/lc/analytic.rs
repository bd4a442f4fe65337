use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::number::power_series;
use super::{LcError, LcNumber, TruncationContext};

/// Elementary functions that can be lifted to finite Levi-Civita arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalyticFn {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Atan,
}

impl AnalyticFn {
    pub const ALL: [AnalyticFn; 6] =
        [AnalyticFn::Sin, AnalyticFn::Cos, AnalyticFn::Tan, AnalyticFn::Exp, AnalyticFn::Log, AnalyticFn::Atan];

    pub fn name(self) -> &'static str {
        match self {
            AnalyticFn::Sin => "sin",
            AnalyticFn::Cos => "cos",
            AnalyticFn::Tan => "tan",
            AnalyticFn::Exp => "exp",
            AnalyticFn::Log => "log",
            AnalyticFn::Atan => "atan",
        }
    }

    pub fn eval_real(self, x: f64) -> f64 {
        match self {
            AnalyticFn::Sin => x.sin(),
            AnalyticFn::Cos => x.cos(),
            AnalyticFn::Tan => x.tan(),
            AnalyticFn::Exp => x.exp(),
            AnalyticFn::Log => x.ln(),
            AnalyticFn::Atan => x.atan(),
        }
    }

    /// Evaluates `f(a)` as the Taylor series of `f` about `st(a)` in the
    /// infinitesimal part of `a`.
    pub fn lift(self, a: &LcNumber, ctx: &TruncationContext) -> Result<LcNumber, LcError> {
        if a.is_infinite() {
            return Err(LcError::Domain(format!("{} of an infinite argument", self.name())));
        }
        let s = a.standard_part()?;
        let delta = a.infinitesimal_part();
        match self {
            AnalyticFn::Exp => {
                let es = s.exp();
                Ok(taylor(&delta, ctx, |k| es / factorial(k)))
            }
            AnalyticFn::Sin | AnalyticFn::Cos => {
                let (sn, cs) = s.sin_cos();
                // Successive derivatives of sin cycle through sin, cos, -sin, -cos.
                let cycle = if self == AnalyticFn::Sin { [sn, cs, -sn, -cs] } else { [cs, -sn, -cs, sn] };
                Ok(taylor(&delta, ctx, |k| cycle[k % 4] / factorial(k)))
            }
            AnalyticFn::Log => {
                if s <= 0.0 {
                    return Err(LcError::Domain(format!("log of a number with standard part {s}")));
                }
                let ls = s.ln();
                Ok(taylor(&delta, ctx, |k| match k {
                    0 => ls,
                    _ => {
                        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                        sign / (k as f64 * s.powi(k as i32))
                    }
                }))
            }
            AnalyticFn::Atan => {
                // atan(a) = atan(s) + atan(w) with w = δ / (1 + s·a), w infinitesimal.
                let denom = LcNumber::one().add(&a.scale(s), ctx);
                let w = delta.div(&denom, ctx)?;
                let tail = taylor(&w, ctx, |k| match k % 4 {
                    1 => 1.0 / k as f64,
                    3 => -1.0 / k as f64,
                    _ => 0.0,
                });
                Ok(LcNumber::from_real(s.atan())?.add(&tail, ctx))
            }
            AnalyticFn::Tan => {
                let sin = AnalyticFn::Sin.lift(a, ctx)?;
                let cos = AnalyticFn::Cos.lift(a, ctx)?;
                sin.div(&cos, ctx)
            }
        }
    }
}

impl fmt::Display for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnalyticFn {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AnalyticFn::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown function `{s}`"))
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `Σ c_k δ^k` truncated to the window above the leading term of the result.
fn taylor(delta: &LcNumber, ctx: &TruncationContext, coeff: impl Fn(usize) -> f64) -> LcNumber {
    let window = ctx.exponent_window();
    let limit = match delta.leading_exponent() {
        // Lowest surviving order decides where the result's window starts.
        Some(lead) => {
            let first = (0..).take(4096).find(|&k| coeff(k) != 0.0).unwrap_or(0);
            lead * super::Exponent::integer(first as i64) + window
        }
        None => window,
    };
    ctx.apply(power_series(delta, limit, coeff))
}
