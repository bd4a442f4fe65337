//! Plane curves: polylines and parametric pairs of expressions.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{EvalError, Expr};
use crate::lc::{LcNumber, TruncationContext};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),
    #[error("invalid parametric curve: {0}")]
    InvalidParametric(String),
    #[error("curve evaluation failed at t = {t}: {source}")]
    Evaluation { t: f64, source: EvalError },
}

/// One straight piece of a polyline: its length and direction angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub length: f64,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<(f64, f64)>,
    segments: Vec<Segment>,
}

impl Polyline {
    /// Needs at least two vertices, all finite, consecutive ones distinct.
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self, CurveError> {
        if vertices.len() < 2 {
            return Err(CurveError::InvalidPolyline(format!("need at least 2 vertices, got {}", vertices.len())));
        }
        if let Some(i) = vertices.iter().position(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(CurveError::InvalidPolyline(format!("vertex {i} is not finite")));
        }
        let mut segments = Vec::with_capacity(vertices.len() - 1);
        for (i, w) in vertices.windows(2).enumerate() {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            if dx == 0.0 && dy == 0.0 {
                return Err(CurveError::InvalidPolyline(format!("vertices {i} and {} coincide", i + 1)));
            }
            segments.push(Segment { length: dx.hypot(dy), angle: dy.atan2(dx) });
        }
        Ok(Self { vertices, segments })
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Sum of segment lengths.
    pub fn length(&self) -> f64 {
        crate::exec::stable_sum(self.segments.iter().map(|s| s.length))
    }

    /// Applies a rotation by `angle` about the origin followed by a translation.
    pub fn rigid_motion(&self, angle: f64, shift: (f64, f64)) -> Result<Self, CurveError> {
        let (s, c) = angle.sin_cos();
        Self::new(
            self.vertices
                .iter()
                .map(|&(x, y)| (c * x - s * y + shift.0, s * x + c * y + shift.1))
                .collect(),
        )
    }
}

/// `t ↦ (x(t), y(t))` on `[t0, t1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    x: Expr,
    y: Expr,
    t0: f64,
    t1: f64,
}

impl ParametricCurve {
    pub fn new(x: Expr, y: Expr, t0: f64, t1: f64) -> Result<Self, CurveError> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(CurveError::InvalidParametric(format!("need finite t0 < t1, got [{t0}, {t1}]")));
        }
        for (name, e) in [("x", &x), ("y", &y)] {
            if e.vars().len() > 1 {
                return Err(CurveError::InvalidParametric(format!("{name} must depend on one parameter, got {:?}", e.vars())));
            }
        }
        Ok(Self { x, y, t0, t1 })
    }

    /// Parses both coordinates over the parameter `t`.
    pub fn parse(x: &str, y: &str, t0: f64, t1: f64) -> Result<Self, CurveError> {
        let px = crate::expr::parse(x, &["t"]).map_err(|e| CurveError::InvalidParametric(format!("x: {e}")))?;
        let py = crate::expr::parse(y, &["t"]).map_err(|e| CurveError::InvalidParametric(format!("y: {e}")))?;
        Self::new(px, py, t0, t1)
    }

    pub fn x(&self) -> &Expr {
        &self.x
    }

    pub fn y(&self) -> &Expr {
        &self.y
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn eval_real(&self, t: f64) -> Result<(f64, f64), CurveError> {
        let one = |e: &Expr| {
            let args = if e.vars().is_empty() { &[][..] } else { std::slice::from_ref(&t) };
            e.eval_real_at(args).map_err(|source| CurveError::Evaluation { t, source })
        };
        Ok((one(&self.x)?, one(&self.y)?))
    }

    pub fn eval_lc(&self, t: &LcNumber, ctx: &TruncationContext) -> Result<(LcNumber, LcNumber), CurveError> {
        let at = t.standard_part().unwrap_or(f64::NAN);
        let one = |e: &Expr| {
            let args = if e.vars().is_empty() { &[][..] } else { std::slice::from_ref(t) };
            e.eval_lc_at(args, ctx).map_err(|source| CurveError::Evaluation { t: at, source })
        };
        Ok((one(&self.x)?, one(&self.y)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Polyline(Polyline),
    Parametric(ParametricCurve),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyline_validation() {
        assert!(Polyline::new(vec![(0.0, 0.0)]).is_err());
        assert!(Polyline::new(vec![(0.0, 0.0), (0.0, 0.0)]).is_err());
        assert!(Polyline::new(vec![(0.0, 0.0), (f64::NAN, 1.0)]).is_err());
        let p = Polyline::new(vec![(0.0, 0.0), (3.0, 4.0), (3.0, 0.0)]).unwrap();
        assert_eq!(p.length(), 9.0);
        assert_eq!(p.segments()[1].angle, -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn parametric_validation() {
        assert!(ParametricCurve::parse("cos(t)", "sin(t)", 1.0, 1.0).is_err());
        assert!(ParametricCurve::parse("cos(t", "sin(t)", 0.0, 1.0).is_err());
        let c = ParametricCurve::parse("t", "t^2", -1.0, 1.0).unwrap();
        assert_eq!(c.eval_real(0.5).unwrap(), (0.5, 0.25));
        let bad = ParametricCurve::parse("log(t)", "t", -1.0, 1.0).unwrap();
        assert!(matches!(bad.eval_real(-0.5), Err(CurveError::Evaluation { .. })));
    }
}
