//! Gauss–Legendre rules and adaptive composite integration.

use crate::exec::{stable_sum, Execution};

/// An n-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n`, seeded with the Chebyshev-like guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<E>(&self, f: &impl Fn(f64) -> Result<f64, E>, a: f64, b: f64) -> Result<f64, E> {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x)?;
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tolerances for [`adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_depth: u32,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-13, rel: 1e-14, max_depth: 48 }
    }
}

/// Adaptive bisection: a panel is accepted when the rule on the whole panel
/// agrees with the rule on its two halves.
pub fn adaptive<E>(
    rule: &GaussLegendre,
    f: &impl Fn(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<f64, E> {
    let whole = rule.integrate(f, a, b)?;
    refine(rule, f, a, b, whole, tol.abs, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn refine<E>(
    rule: &GaussLegendre,
    f: &impl Fn(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    whole: f64,
    abs_budget: f64,
    tol: Tolerance,
    depth: u32,
) -> Result<f64, E> {
    let m = 0.5 * (a + b);
    let left = rule.integrate(f, a, m)?;
    let right = rule.integrate(f, m, b)?;
    let halves = left + right;
    let err = (halves - whole).abs();
    if err <= abs_budget.max(tol.rel * halves.abs()) || depth >= tol.max_depth || m <= a || m >= b {
        return Ok(halves);
    }
    Ok(refine(rule, f, a, m, left, 0.5 * abs_budget, tol, depth + 1)?
        + refine(rule, f, m, b, right, 0.5 * abs_budget, tol, depth + 1)?)
}

/// Adaptive integration over `[points[0], points[last]]`, split at every
/// breakpoint. Panels are independent and may run in parallel; partial sums
/// are combined in panel order.
pub fn adaptive_piecewise<E, F>(
    rule: &GaussLegendre,
    f: &F,
    points: &[f64],
    tol: Tolerance,
    exec: Execution,
) -> Result<f64, E>
where
    E: Send,
    F: Fn(f64) -> Result<f64, E> + Sync,
{
    if points.len() < 2 {
        return Ok(0.0);
    }
    let span = (points[points.len() - 1] - points[0]).abs().max(f64::MIN_POSITIVE);
    let parts = exec.try_map(points.len() - 1, |i| {
        let (a, b) = (points[i], points[i + 1]);
        let share = Tolerance { abs: tol.abs * (b - a).abs() / span, ..tol };
        adaptive(rule, f, a, b, share)
    })?;
    Ok(stable_sum(parts))
}
