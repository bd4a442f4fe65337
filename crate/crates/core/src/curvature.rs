//! Radius and center of curvature of parametric curves, computed from the
//! infinitely close point `t + ε` and rounded with the standard part.
//!
//! Three routes to the radius are offered:
//! the angle of contingence `Δτ / Δs`, the chord deviation `i² / (2γ)` between
//! the curve and its tangent after equal arclength `i`, and the meeting point
//! of the normals at `t` and `t + ε`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, ParametricCurve};
use crate::exec::Execution;
use crate::lc::{AnalyticFn, Exponent, LcError, LcNumber, TruncationContext};

/// Curvatures at or below this are reported as an infinite radius.
pub const MIN_CURVATURE: f64 = 1e-12;

/// Relative tolerance for agreement between methods in [`osculating`].
pub const AGREEMENT_TOL: f64 = 1e-8;

/// Smallest exponent window that keeps two guard orders above `ε²`.
pub const MIN_WINDOW: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ContingenceAngle,
    ChordDeviation,
    NormalIntersection,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ContingenceAngle => "contingence-angle",
            Method::ChordDeviation => "chord-deviation",
            Method::NormalIntersection => "normal-intersection",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    InfiniteRadius,
    EvaluationFailure,
    DegenerateParametrization,
    /// Two methods returned different values.
    Disagreement,
    /// The truncation context cannot resolve the second order.
    Configuration,
}

impl ErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::InfiniteRadius => "infinite-radius",
            ErrorKind::EvaluationFailure => "evaluation-failure",
            ErrorKind::DegenerateParametrization => "degenerate-parametrization",
            ErrorKind::Disagreement => "disagreement",
            ErrorKind::Configuration => "configuration",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind}: {detail}")]
pub struct CurvatureError {
    pub kind: ErrorKind,
    pub detail: String,
}

impl CurvatureError {
    fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        Self { kind, detail: detail.into() }
    }

    fn infinite(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::InfiniteRadius, detail)
    }
}

impl From<CurveError> for CurvatureError {
    fn from(e: CurveError) -> Self {
        Self::new(ErrorKind::EvaluationFailure, e.to_string())
    }
}

impl From<LcError> for CurvatureError {
    fn from(e: LcError) -> Self {
        Self::new(ErrorKind::EvaluationFailure, e.to_string())
    }
}

/// Osculating data at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvaturePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub tau: f64,
    pub rho: f64,
    pub cx: f64,
    pub cy: f64,
    pub method: Method,
}

impl CurvaturePoint {
    pub const CSV_HEADER: [&'static str; 8] = ["t", "x", "y", "tau", "rho", "cx", "cy", "method"];

    pub fn position(&self) -> (f64, f64) {
        (self.x, self.y)
    }

    pub fn center(&self) -> (f64, f64) {
        (self.cx, self.cy)
    }
}

/// The curve near `t`: position, velocity, and the ε-expansions of the
/// increment and of the velocity at `t + ε`.
struct Local {
    p: (f64, f64),
    v: (f64, f64),
    dx: LcNumber,
    dy: LcNumber,
    vx: LcNumber,
    vy: LcNumber,
}

impl Local {
    fn speed(&self) -> f64 {
        self.v.0.hypot(self.v.1)
    }
}

fn local(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<Local, CurvatureError> {
    let at = LcNumber::from_real(t)?.add(&LcNumber::epsilon(), ctx);
    let (x, y) = curve.eval_lc(&at, ctx)?;
    if !x.is_finite() || !y.is_finite() {
        return Err(CurvatureError::new(ErrorKind::EvaluationFailure, format!("curve is infinite near t = {t}")));
    }
    for c in [&x, &y] {
        if let Some(&(e, _)) = c.terms().iter().find(|(e, _)| !e.is_integer()) {
            return Err(CurvatureError::new(
                ErrorKind::DegenerateParametrization,
                format!("coordinate is not smooth at t = {t}: term of order {e}"),
            ));
        }
    }
    let one = Exponent::ONE;
    let l = Local {
        p: (x.standard_part()?, y.standard_part()?),
        v: (x.coefficient(one), y.coefficient(one)),
        vx: x.derivative_eps(),
        vy: y.derivative_eps(),
        dx: x.infinitesimal_part(),
        dy: y.infinitesimal_part(),
    };
    let scale = 1.0 + l.p.0.hypot(l.p.1);
    if l.speed() <= f64::EPSILON * scale {
        return Err(CurvatureError::new(
            ErrorKind::DegenerateParametrization,
            format!("velocity vanishes at t = {t}"),
        ));
    }
    Ok(l)
}

fn check_window(ctx: &TruncationContext) -> Result<(), CurvatureError> {
    if ctx.exponent_window() < Exponent::integer(MIN_WINDOW) {
        return Err(CurvatureError::new(
            ErrorKind::Configuration,
            format!("curvature needs an exponent window of at least {MIN_WINDOW}, got {}", ctx.exponent_window()),
        ));
    }
    Ok(())
}

/// Standard part of a ratio that must be determined at order zero.
fn st_checked(x: &LcNumber, what: &str) -> Result<f64, CurvatureError> {
    if x.known_through().is_some_and(|k| k < Exponent::ZERO) {
        return Err(CurvatureError::new(
            ErrorKind::Configuration,
            format!("{what} is not determined at order zero; widen the truncation window"),
        ));
    }
    Ok(x.standard_part()?)
}

/// Direction of the velocity, counterclockwise from the positive x-axis.
pub fn tangent_angle(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<f64, CurvatureError> {
    let l = local(curve, t, ctx)?;
    Ok(l.v.1.atan2(l.v.0))
}

/// Signed curvature `st(Δτ / Δs)`, positive when the curve turns left.
fn signed_curvature(l: &Local, ctx: &TruncationContext) -> Result<f64, CurvatureError> {
    let (x1, y1) = l.v;
    let cross = l.vy.scale(x1).sub(&l.vx.scale(y1), ctx);
    let dot = l.vx.scale(x1).add(&l.vy.scale(y1), ctx);
    // Velocities at t and t + ε are infinitely close, so the angle between
    // them is atan of an infinitesimal.
    let dtau = AnalyticFn::Atan.lift(&cross.div(&dot, ctx)?, ctx)?;
    let ds = l.dx.mul(&l.dx, ctx).add(&l.dy.mul(&l.dy, ctx), ctx).sqrt(ctx)?;
    st_checked(&dtau.div(&ds, ctx)?, "contingence ratio")
}

/// `ρ = 1 / |st(Δτ / √(Δx² + Δy²))|`.
pub fn radius_contingence(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<f64, CurvatureError> {
    check_window(ctx)?;
    let l = local(curve, t, ctx)?;
    let k = signed_curvature(&l, ctx)?;
    if k.abs() <= MIN_CURVATURE {
        return Err(CurvatureError::infinite(format!("angle of contingence vanishes at t = {t}")));
    }
    Ok(1.0 / k.abs())
}

/// Drops the order ≤ 1 terms of a chord-deviation component. They cancel
/// exactly in theory; anything beyond rounding noise is an error.
fn strip_first_order(c: &LcNumber, speed: f64, ctx: &TruncationContext) -> Result<LcNumber, CurvatureError> {
    let mut residue = LcNumber::zero();
    for &(e, coeff) in c.terms() {
        if e <= Exponent::ONE {
            if coeff.abs() > 1e-12 * (1.0 + speed) {
                return Err(CurvatureError::new(
                    ErrorKind::EvaluationFailure,
                    format!("tangent deviation has a first-order term {coeff}"),
                ));
            }
            residue = residue.add(&LcNumber::monomial(coeff, e), ctx);
        }
    }
    Ok(c.sub(&residue, ctx))
}

/// `ρ = st(i² / (2γ))`: `i` is the arclength from `t` to `t + ε` and `γ` the
/// distance between the curve point at `t + ε` and the point at distance `i`
/// along the tangent.
pub fn radius_chord(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<f64, CurvatureError> {
    check_window(ctx)?;
    let l = local(curve, t, ctx)?;
    let speed_at = l.vx.mul(&l.vx, ctx).add(&l.vy.mul(&l.vy, ctx), ctx).sqrt(ctx)?;
    let i = speed_at.integral_eps()?;
    let s = l.speed();
    let (tx, ty) = (l.v.0 / s, l.v.1 / s);
    let gx = strip_first_order(&l.dx.sub(&i.scale(tx), ctx), s, ctx)?;
    let gy = strip_first_order(&l.dy.sub(&i.scale(ty), ctx), s, ctx)?;
    let gamma = gx.mul(&gx, ctx).add(&gy.mul(&gy, ctx), ctx).sqrt(ctx)?;
    if gamma.is_zero() || gamma.leading_exponent() > Some(Exponent::integer(2)) {
        return Err(CurvatureError::infinite(format!("chord deviation is beyond second order at t = {t}")));
    }
    let i2 = i.mul(&i, ctx);
    let k = st_checked(&gamma.scale(2.0).div(&i2, ctx)?, "chord deviation ratio")?;
    if k <= MIN_CURVATURE {
        return Err(CurvatureError::infinite(format!("chord deviation vanishes at t = {t}")));
    }
    st_checked(&i2.div(&gamma.scale(2.0), ctx)?, "chord deviation ratio")
}

/// Where the normals at `t` and `t + ε` meet, rounded to the standard part.
pub fn center_normals(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<(f64, f64), CurvatureError> {
    check_window(ctx)?;
    let l = local(curve, t, ctx)?;
    let (cx, cy, _) = normal_intersection(&l, t, ctx)?;
    Ok((cx, cy))
}

/// Returns the center and its distance from the curve point.
fn normal_intersection(l: &Local, t: f64, ctx: &TruncationContext) -> Result<(f64, f64, f64), CurvatureError> {
    // Solve P + λ N = P(t + ε) + μ N(t + ε) for λ.
    let n = (-l.v.1, l.v.0);
    let (nex, ney) = (l.vy.neg(), l.vx.clone());
    let det = nex.scale(n.1).sub(&ney.scale(n.0), ctx);
    if det.is_zero() {
        return Err(CurvatureError::infinite(format!("normals are parallel at t = {t}")));
    }
    let num = nex.mul(&l.dy, ctx).sub(&ney.mul(&l.dx, ctx), ctx);
    let lambda = num.div(&det, ctx)?;
    if lambda.is_infinite() {
        return Err(CurvatureError::infinite(format!("normals meet at infinity at t = {t}")));
    }
    let lambda = st_checked(&lambda, "normal intersection")?;
    let r = lambda.abs() * l.speed();
    if r == 0.0 || 1.0 / r <= MIN_CURVATURE {
        return Err(CurvatureError::infinite(format!("normals meet too far away at t = {t}")));
    }
    Ok((l.p.0 + lambda * n.0, l.p.1 + lambda * n.1, r))
}

fn agree(a: f64, b: f64, rho: f64) -> bool {
    (a - b).abs() <= AGREEMENT_TOL * (1.0 + rho)
}

/// Runs every method, checks that they agree, and reports the chord-deviation
/// radius with the center `P + ρ·n` on the concave side.
pub fn osculating(curve: &ParametricCurve, t: f64, ctx: &TruncationContext) -> Result<CurvaturePoint, CurvatureError> {
    check_window(ctx)?;
    let l = local(curve, t, ctx)?;
    let k = signed_curvature(&l, ctx)?;
    if k.abs() <= MIN_CURVATURE {
        return Err(CurvatureError::infinite(format!("curvature vanishes at t = {t}")));
    }
    let rho_tau = 1.0 / k.abs();
    let rho = radius_chord(curve, t, ctx)?;
    let (nx, ny, r) = normal_intersection(&l, t, ctx)?;
    let s = l.speed();
    let side = k.signum();
    let (cx, cy) = (l.p.0 - side * rho * l.v.1 / s, l.p.1 + side * rho * l.v.0 / s);
    let checks = [
        ("contingence radius", rho_tau, rho),
        ("normal distance", r, rho),
        ("normal center x", nx, cx),
        ("normal center y", ny, cy),
    ];
    for (what, got, want) in checks {
        if !agree(got, want, rho) {
            return Err(CurvatureError::new(
                ErrorKind::Disagreement,
                format!("{what} {got} differs from {want} at t = {t}"),
            ));
        }
    }
    Ok(CurvaturePoint { t, x: l.p.0, y: l.p.1, tau: l.v.1.atan2(l.v.0), rho, cx, cy, method: Method::ChordDeviation })
}

/// [`osculating`] at each parameter, in input order.
pub fn osculating_many(
    curve: &ParametricCurve,
    ts: &[f64],
    ctx: &TruncationContext,
    exec: Execution,
) -> Vec<Result<CurvaturePoint, CurvatureError>> {
    exec.map(ts.len(), |i| osculating(curve, ts[i], ctx))
}
