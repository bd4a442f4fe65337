//! Derivatives, limits and continuity as standard parts of infinitesimal
//! computations, plus the delta-kernel integral and the series tail probe.

use serde::Serialize;
use thiserror::Error;

use crate::exec::{stable_sum, Execution};
use crate::expr::{EvalError, Expr};
use crate::lc::{Exponent, LcError, LcNumber, TruncationContext};
use crate::quadrature::{adaptive_piecewise, GaussLegendre, Tolerance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalculusError {
    #[error("value is infinite; no standard part")]
    InfiniteNumber,
    #[error("not differentiable: {0}")]
    NotDifferentiable(String),
    #[error("function is not defined at {at}: {source}")]
    Undefined { at: String, source: EvalError },
    #[error("increment must be a nonzero infinitesimal, got {0}")]
    NotInfinitesimal(String),
    #[error("point must be finite, got {0}")]
    InfinitePoint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<LcError> for CalculusError {
    fn from(e: LcError) -> Self {
        match e {
            LcError::InfiniteNumber => CalculusError::InfiniteNumber,
            other => CalculusError::InvalidArgument(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

/// Outcome of comparing `f(p + h)` with `f(p)` for an infinitesimal `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityVerdict {
    pub point: LcNumber,
    pub increment: LcNumber,
    pub difference: LcNumber,
    pub continuous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaKernelParams {
    pub a: f64,
    pub alpha: f64,
    pub eps: f64,
    pub quadrature_points: usize,
}

impl DeltaKernelParams {
    pub fn new(a: f64, alpha: f64, eps: f64) -> Self {
        Self { a, alpha, eps, quadrature_points: 15 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailProbeRow {
    pub n: u64,
    pub n_prime: u64,
    pub x: f64,
    pub tail_value: f64,
}

fn single_var(f: &Expr) -> Result<(), CalculusError> {
    if f.vars().len() > 1 {
        return Err(CalculusError::InvalidArgument(format!(
            "expected a function of one variable, got {:?}",
            f.vars()
        )));
    }
    Ok(())
}

fn eval_at(f: &Expr, x: &LcNumber, ctx: &TruncationContext) -> Result<LcNumber, CalculusError> {
    single_var(f)?;
    let args = if f.vars().is_empty() { &[][..] } else { std::slice::from_ref(x) };
    f.eval_lc_at(args, ctx)
        .map_err(|source| CalculusError::Undefined { at: x.to_string(), source })
}

fn real_point(x0: f64) -> Result<LcNumber, CalculusError> {
    LcNumber::from_real(x0).map_err(|e| CalculusError::InvalidArgument(e.to_string()))
}

/// `st((f(x0 + ε) − f(x0)) / ε)`.
pub fn derivative(f: &Expr, x0: f64, ctx: &TruncationContext) -> Result<f64, CalculusError> {
    let p = real_point(x0)?;
    let moved = eval_at(f, &p.add(&LcNumber::epsilon(), ctx), ctx)?;
    let base = eval_at(f, &p, ctx)?;
    // Dividing by ε is an exact exponent shift.
    let ratio = moved.sub(&base, ctx).shift(-Exponent::ONE);
    ratio.standard_part().map_err(|_| CalculusError::NotDifferentiable(format!("difference quotient {ratio} is infinite")))
}

/// Coefficients of `ε^0 … ε^k` in `f(x0 + ε)`; the j-th derivative is `j!`
/// times the j-th entry.
pub fn taylor_coefficients(f: &Expr, x0: f64, k: usize, ctx: &TruncationContext) -> Result<Vec<f64>, CalculusError> {
    let top = Exponent::integer(k as i64);
    if top > ctx.exponent_window() {
        return Err(CalculusError::InvalidArgument(format!(
            "order {k} exceeds the truncation window {}",
            ctx.exponent_window()
        )));
    }
    let p = real_point(x0)?;
    let v = eval_at(f, &p.add(&LcNumber::epsilon(), ctx), ctx)?;
    if v.is_infinite() {
        return Err(CalculusError::InfiniteNumber);
    }
    if let Some(&(e, _)) = v.terms().iter().find(|(e, _)| !e.is_integer() && *e <= top) {
        return Err(CalculusError::NotDifferentiable(format!("fractional order {e} in expansion {v}")));
    }
    if v.known_through().is_some_and(|known| known < top) {
        return Err(CalculusError::InvalidArgument(format!("expansion only determined through order {}", v.known_through().unwrap())));
    }
    Ok((0..=k).map(|j| v.coefficient(Exponent::integer(j as i64))).collect())
}

/// One-sided limit `st(f(x0 ± ε))`.
pub fn limit_at(f: &Expr, x0: f64, side: Side, ctx: &TruncationContext) -> Result<f64, CalculusError> {
    let eps = match side {
        Side::Above => LcNumber::epsilon(),
        Side::Below => LcNumber::epsilon().neg(),
    };
    let v = eval_at(f, &real_point(x0)?.add(&eps, ctx), ctx)?;
    Ok(v.standard_part()?)
}

/// Continuity at a standard point: is `f(x0 + ε) − f(x0)` infinitesimal?
pub fn continuity_probe(f: &Expr, x0: f64, ctx: &TruncationContext) -> Result<ContinuityVerdict, CalculusError> {
    continuity_probe_with(f, x0, &LcNumber::epsilon(), ctx)
}

/// [`continuity_probe`] with a caller-chosen infinitesimal increment.
pub fn continuity_probe_with(
    f: &Expr,
    x0: f64,
    increment: &LcNumber,
    ctx: &TruncationContext,
) -> Result<ContinuityVerdict, CalculusError> {
    microcontinuity_probe(f, &real_point(x0)?, increment, ctx)
}

/// Continuity at a possibly nonstandard finite point `p`. A failure at a
/// nonstandard point witnesses non-uniform continuity.
pub fn microcontinuity_probe(
    f: &Expr,
    p: &LcNumber,
    increment: &LcNumber,
    ctx: &TruncationContext,
) -> Result<ContinuityVerdict, CalculusError> {
    if increment.is_zero() || !increment.is_infinitesimal() {
        return Err(CalculusError::NotInfinitesimal(increment.to_string()));
    }
    if p.is_infinite() {
        return Err(CalculusError::InfinitePoint(p.to_string()));
    }
    let base = eval_at(f, p, ctx)?;
    let moved = eval_at(f, &p.add(increment, ctx), ctx)?;
    let difference = moved.sub(&base, ctx);
    Ok(ContinuityVerdict {
        point: p.clone(),
        increment: increment.clone(),
        continuous: difference.is_infinitesimal(),
        difference,
    })
}

/// Limit-commutation form of continuity: `st(f(x)) = f(st(x))`.
pub fn commutation_check(f: &Expr, x: &LcNumber, ctx: &TruncationContext) -> Result<bool, CalculusError> {
    if x.is_infinite() {
        return Err(CalculusError::InfinitePoint(x.to_string()));
    }
    let s = x.standard_part()?;
    let lhs = eval_at(f, x, ctx)?.standard_part()?;
    let rhs = eval_real1(f, s)?;
    Ok((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()))
}

fn eval_real1(f: &Expr, x: f64) -> Result<f64, CalculusError> {
    single_var(f)?;
    let args = if f.vars().is_empty() { &[][..] } else { std::slice::from_ref(&x) };
    f.eval_real_at(args)
        .map_err(|source| CalculusError::Undefined { at: format!("{x:?}"), source })
}

/// `½ ∫_{a−ε}^{a+ε} F(μ) α / (α² + (μ − a)²) dμ` by adaptive composite
/// Gauss–Legendre, split at the kernel peak.
pub fn delta_kernel_integral(f: &Expr, params: &DeltaKernelParams) -> Result<f64, CalculusError> {
    delta_kernel_integral_with(f, params, Execution::default())
}

pub fn delta_kernel_integral_with(
    f: &Expr,
    params: &DeltaKernelParams,
    exec: Execution,
) -> Result<f64, CalculusError> {
    let DeltaKernelParams { a, alpha, eps, quadrature_points } = *params;
    if !(alpha > 0.0 && alpha.is_finite()) || !(eps > 0.0 && eps.is_finite()) || !a.is_finite() {
        return Err(CalculusError::InvalidArgument(format!("need finite a and alpha, eps > 0 (got {params:?})")));
    }
    if quadrature_points == 0 {
        return Err(CalculusError::InvalidArgument("quadrature_points must be positive".into()));
    }
    single_var(f)?;
    let rule = GaussLegendre::new(quadrature_points);
    let integrand = |mu: f64| -> Result<f64, CalculusError> {
        let d = mu - a;
        Ok(eval_real1(f, mu)? * alpha / (alpha * alpha + d * d))
    };
    let tol = Tolerance { abs: 1e-13, rel: 1e-15, max_depth: 60 };
    let total = adaptive_piecewise(&rule, &integrand, &[a - eps, a, a + eps], tol, exec)?;
    Ok(0.5 * total)
}

/// For each `n`, the block sum `Σ_{k=n}^{r·n−1} term(k, 1/n)`.
pub fn sum_theorem_probe(term: &Expr, n_ladder: &[u64], ratio: u64) -> Result<Vec<TailProbeRow>, CalculusError> {
    sum_theorem_probe_with(term, n_ladder, ratio, Execution::default())
}

pub fn sum_theorem_probe_with(
    term: &Expr,
    n_ladder: &[u64],
    ratio: u64,
    exec: Execution,
) -> Result<Vec<TailProbeRow>, CalculusError> {
    if ratio < 2 {
        return Err(CalculusError::InvalidArgument(format!("ratio must be at least 2, got {ratio}")));
    }
    if n_ladder.is_empty() || n_ladder[0] == 0 || n_ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CalculusError::InvalidArgument("ladder must be positive and strictly increasing".into()));
    }
    let k_slot = term.var_index("k");
    let x_slot = term.var_index("x");
    if let Some(other) = term.vars().iter().find(|v| *v != "k" && *v != "x") {
        return Err(CalculusError::InvalidArgument(format!("term may only use k and x, found `{other}`")));
    }
    exec.try_map(n_ladder.len(), |i| {
        let n = n_ladder[i];
        let n_prime = n.checked_mul(ratio).ok_or_else(|| CalculusError::InvalidArgument("n·r overflows".into()))?;
        let x = 1.0 / n as f64;
        let mut args = vec![0.0; term.vars().len()];
        if let Some(s) = x_slot {
            args[s] = x;
        }
        let mut values = Vec::with_capacity((n_prime - n) as usize);
        for k in n..n_prime {
            if let Some(s) = k_slot {
                args[s] = k as f64;
            }
            let v = term
                .eval_real_at(&args)
                .map_err(|source| CalculusError::Undefined { at: format!("k={k}, x={x:?}"), source })?;
            values.push(v);
        }
        Ok(TailProbeRow { n, n_prime, x, tail_value: stable_sum(values) })
    })
}
