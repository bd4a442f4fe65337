use std::cmp::Ordering;

use super::{BinaryOp, EvalError, Expr, Node, UnaryOp};
use crate::lc::{AnalyticFn, LcNumber, TruncationContext};

impl Expr {
    fn positional<T: Clone>(&self, bindings: &[(&str, T)]) -> Result<Vec<T>, EvalError> {
        self.vars
            .iter()
            .map(|v| {
                bindings
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| EvalError::Unbound(v.clone()))
            })
            .collect()
    }

    /// Real evaluation with variables bound by name.
    pub fn eval_real(&self, bindings: &[(&str, f64)]) -> Result<f64, EvalError> {
        self.eval_real_at(&self.positional(bindings)?)
    }

    /// Real evaluation with `values[i]` bound to the i-th declared variable.
    pub fn eval_real_at(&self, values: &[f64]) -> Result<f64, EvalError> {
        if values.len() < self.vars.len() {
            return Err(EvalError::Unbound(self.vars[values.len()].clone()));
        }
        let v = real(&self.root, values)?;
        if v.is_finite() { Ok(v) } else { Err(EvalError::NonFinite) }
    }

    /// Evaluation over Levi-Civita numbers, variables bound by name.
    pub fn eval_lc(&self, bindings: &[(&str, LcNumber)], ctx: &TruncationContext) -> Result<LcNumber, EvalError> {
        self.eval_lc_at(&self.positional(bindings)?, ctx)
    }

    pub fn eval_lc_at(&self, values: &[LcNumber], ctx: &TruncationContext) -> Result<LcNumber, EvalError> {
        if values.len() < self.vars.len() {
            return Err(EvalError::Unbound(self.vars[values.len()].clone()));
        }
        lc(&self.root, values, ctx)
    }
}

fn real(node: &Node, values: &[f64]) -> Result<f64, EvalError> {
    Ok(match node {
        Node::Constant(c) => *c,
        Node::Variable(i) => values[*i],
        Node::Unary(op, child) => {
            let x = real(child, values)?;
            match op {
                UnaryOp::Neg => -x,
                UnaryOp::Abs => x.abs(),
                UnaryOp::Sqrt if x < 0.0 => return Err(EvalError::Domain(format!("sqrt({x})"))),
                UnaryOp::Sqrt => x.sqrt(),
                UnaryOp::Analytic(f) => {
                    if *f == AnalyticFn::Log && x <= 0.0 {
                        return Err(EvalError::Domain(format!("log({x})")));
                    }
                    f.eval_real(x)
                }
            }
        }
        Node::Binary(op, l, r) => {
            let (a, b) = (real(l, values)?, real(r, values)?);
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div if b == 0.0 => return Err(EvalError::DivisionByZero),
                BinaryOp::Div => a / b,
            }
        }
        Node::Pow(base, e) => {
            let b = real(base, values)?;
            if b == 0.0 && e.is_negative() {
                return Err(EvalError::DivisionByZero);
            }
            if e.is_integer() {
                match i32::try_from(e.numerator()) {
                    Ok(n) => b.powi(n),
                    Err(_) => b.powf(e.to_f64()),
                }
            } else if b < 0.0 {
                return Err(EvalError::Domain(format!("({b})^{e}")));
            } else {
                b.powf(e.to_f64())
            }
        }
    })
}

fn lc(node: &Node, values: &[LcNumber], ctx: &TruncationContext) -> Result<LcNumber, EvalError> {
    Ok(match node {
        Node::Constant(c) => LcNumber::from_real(*c)?,
        Node::Variable(i) => values[*i].clone(),
        Node::Unary(op, child) => {
            let x = lc(child, values, ctx)?;
            match op {
                UnaryOp::Neg => x.neg(),
                UnaryOp::Abs => x.abs(),
                UnaryOp::Sqrt => {
                    if x.signum() == Ordering::Less {
                        return Err(EvalError::Domain(format!("sqrt({x})")));
                    }
                    x.sqrt(ctx)?
                }
                UnaryOp::Analytic(f) => f.lift(&x, ctx)?,
            }
        }
        Node::Binary(op, l, r) => {
            let (a, b) = (lc(l, values, ctx)?, lc(r, values, ctx)?);
            match op {
                BinaryOp::Add => a.add(&b, ctx),
                BinaryOp::Sub => a.sub(&b, ctx),
                BinaryOp::Mul => a.mul(&b, ctx),
                BinaryOp::Div if b.is_zero() => return Err(EvalError::DivisionByZero),
                BinaryOp::Div => a.div(&b, ctx)?,
            }
        }
        Node::Pow(base, e) => {
            let b = lc(base, values, ctx)?;
            if b.is_zero() && e.is_negative() {
                return Err(EvalError::DivisionByZero);
            }
            b.powr(*e, ctx)?
        }
    })
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;
    use crate::lc::{Exponent, LcNumber, TruncationContext};

    use super::*;

    #[test]
    fn real_cases() {
        let sq = parse("t^2", &["t"]).unwrap();
        assert_eq!(sq.eval_real(&[("t", 3.0)]).unwrap(), 9.0);
        let pi = parse("atan(1)*4", &[]).unwrap().eval_real(&[]).unwrap();
        assert!((pi - std::f64::consts::PI).abs() <= 1e-15);
        let log = parse("log(t)", &["t"]).unwrap();
        assert!(matches!(log.eval_real(&[("t", 0.0)]), Err(EvalError::Domain(_))));
        assert!(matches!(parse("sqrt(t)", &["t"]).unwrap().eval_real(&[("t", -1.0)]), Err(EvalError::Domain(_))));
        assert_eq!(parse("1/t", &["t"]).unwrap().eval_real(&[("t", 0.0)]), Err(EvalError::DivisionByZero));
        assert!(matches!(sq.eval_real(&[]), Err(EvalError::Unbound(_))));
        assert_eq!(parse("abs(t)", &["t"]).unwrap().eval_real(&[("t", -2.0)]).unwrap(), 2.0);
        assert_eq!(parse("t^(1/3)", &["t"]).unwrap().eval_real(&[("t", 8.0)]).unwrap(), 2.0);
    }

    #[test]
    fn lc_cases() {
        let ctx = TruncationContext::default();
        let eps = LcNumber::epsilon();
        let one_eps = LcNumber::one().add(&eps, &ctx);
        let sq = parse("t^2", &["t"]).unwrap().eval_lc(&[("t", one_eps)], &ctx).unwrap();
        assert_eq!(sq.terms().iter().map(|t| t.1).collect::<Vec<_>>(), vec![1.0, 2.0, 1.0]);

        let sinc = parse("sin(t)/t", &["t"]).unwrap();
        let v = sinc.eval_lc(&[("t", eps.clone())], &ctx).unwrap();
        assert_eq!(v.standard_part().unwrap(), 1.0);
        // Classical cross-check at a small real argument.
        let r = sinc.eval_real(&[("t", 1e-8)]).unwrap();
        assert!((r - 1.0).abs() < 1e-15);

        let inv = parse("1/t", &["t"]).unwrap().eval_lc(&[("t", eps.clone())], &ctx).unwrap();
        assert_eq!(inv.terms(), &[(Exponent::integer(-1), 1.0)]);

        let abs = parse("abs(t)", &["t"]).unwrap().eval_lc(&[("t", eps.neg())], &ctx).unwrap();
        assert_eq!(abs, eps);
        let step = parse("t/abs(t)", &["t"]).unwrap();
        assert_eq!(step.eval_lc(&[("t", eps.neg())], &ctx).unwrap().standard_part().unwrap(), -1.0);
        assert!(step.eval_lc(&[("t", LcNumber::zero())], &ctx).is_err());

        let big = eps.inverse(&ctx).unwrap();
        assert!(parse("sin(t)", &["t"]).unwrap().eval_lc(&[("t", big)], &ctx).is_err());
    }
}
