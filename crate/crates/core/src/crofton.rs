//! Length of plane curves from projections onto rotating lines.
//!
//! `A(p)` is the total length of the orthogonal projections of a polyline's
//! segments onto the line with direction `p`. Integrating over all directions
//! recovers the length exactly (`S = ¼ ∫_{−π}^{π} A dp`); averaging over `n`
//! equally spaced directions gives the estimate `(π/2)·M` with error bound
//! `π M / (2 n²)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, ParametricCurve, Polyline};
use crate::exec::{stable_sum, Execution};
use crate::quadrature::{adaptive_piecewise, GaussLegendre, Tolerance};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CroftonError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// One row of the n-line discretization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CroftonReport {
    pub n: usize,
    pub offset: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub estimate: f64,
    pub exact: f64,
    pub observed_error: f64,
    pub bound: f64,
}

impl CroftonReport {
    pub const CSV_HEADER: [&'static str; 7] = ["n", "offset", "M", "estimate", "exact", "observed_error", "bound"];

    pub fn exceeds_bound(&self) -> bool {
        self.observed_error > self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomLineEstimate {
    pub samples: usize,
    pub seed: u64,
    pub mean_projection: f64,
    pub estimate: f64,
    pub standard_error: f64,
}

/// Samples the curve at equally spaced parameters, dropping repeated vertices.
pub fn discretize(curve: &ParametricCurve, segments: usize) -> Result<Polyline, CroftonError> {
    if segments == 0 {
        return Err(CroftonError::InvalidArgument("segments must be positive".into()));
    }
    let (t0, t1) = curve.interval();
    let mut vertices: Vec<(f64, f64)> = Vec::with_capacity(segments + 1);
    for k in 0..=segments {
        let t = if k == segments { t1 } else { t0 + (t1 - t0) * k as f64 / segments as f64 };
        let v = curve.eval_real(t)?;
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    Ok(Polyline::new(vertices)?)
}

/// `A(p) = Σ s_j |cos(θ_j − p)|`.
pub fn projection_sum(poly: &Polyline, p: f64) -> f64 {
    poly.segments().iter().map(|s| s.length * (s.angle - p).cos().abs()).sum()
}

/// Directions in `[−π, π]` where some `|cos(θ_j − p)|` has a kink, plus the ends.
fn kinks(poly: &Polyline) -> Vec<f64> {
    let mut pts = vec![-PI, PI];
    for s in poly.segments() {
        let r = (s.angle + FRAC_PI_2).rem_euclid(PI);
        pts.push(r);
        pts.push(r - PI);
    }
    pts.retain(|p| (-PI..=PI).contains(p));
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    pts
}

/// Length as `¼ ∫_{−π}^{π} A(p) dp`, by Gauss–Legendre quadrature on the
/// kink-free panels of `A`.
pub fn length_theorem1(poly: &Polyline) -> f64 {
    length_theorem1_with(poly, Execution::default())
}

pub fn length_theorem1_with(poly: &Polyline, exec: Execution) -> f64 {
    let rule = GaussLegendre::new(8);
    let scale = poly.segments().iter().map(|s| s.length).fold(0.0, f64::max) * poly.segments().len() as f64;
    let tol = Tolerance { abs: 1e-14 * scale, rel: 1e-15, max_depth: 24 };
    let f = |p: f64| -> Result<f64, std::convert::Infallible> { Ok(projection_sum(poly, p)) };
    let total = match adaptive_piecewise(&rule, &f, &kinks(poly), tol, exec) {
        Ok(v) => v,
        Err(never) => match never {},
    };
    debug_assert!((total - 4.0 * poly.length()).abs() <= 1e-9 * (1.0 + poly.length()));
    0.25 * total
}

fn report(poly: &Polyline, n: usize, offset: f64, exact: f64) -> CroftonReport {
    let values = (0..n).map(|k| projection_sum(poly, offset + k as f64 * PI / n as f64));
    let m = stable_sum(values) / n as f64;
    let estimate = FRAC_PI_2 * m;
    CroftonReport {
        n,
        offset,
        m,
        estimate,
        exact,
        observed_error: (estimate - exact).abs(),
        bound: PI * m / (2.0 * (n * n) as f64),
    }
}

/// Averages `A` over the `n` directions `offset + kπ/n`.
pub fn length_theorem2(poly: &Polyline, n: usize, offset: f64) -> Result<CroftonReport, CroftonError> {
    if n < 2 {
        return Err(CroftonError::InvalidArgument(format!("need n >= 2 lines, got {n}")));
    }
    if !offset.is_finite() {
        return Err(CroftonError::InvalidArgument("offset must be finite".into()));
    }
    Ok(report(poly, n, offset, length_theorem1(poly)))
}

/// Offsets `jπ/count`, `j = 0…count−1`: a uniform grid over one period of `A`.
pub fn offset_grid(count: usize) -> Vec<f64> {
    (0..count).map(|j| j as f64 * PI / count as f64).collect()
}

/// Reports for every `(n, offset)` pair, ordered by `n` then offset.
pub fn bound_sweep(poly: &Polyline, n_list: &[usize], offsets: usize) -> Result<Vec<CroftonReport>, CroftonError> {
    bound_sweep_with(poly, n_list, offsets, Execution::default())
}

pub fn bound_sweep_with(
    poly: &Polyline,
    n_list: &[usize],
    offsets: usize,
    exec: Execution,
) -> Result<Vec<CroftonReport>, CroftonError> {
    if n_list.is_empty() {
        return Err(CroftonError::InvalidArgument("n list is empty".into()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
        return Err(CroftonError::InvalidArgument(format!("need n >= 2 lines, got {n}")));
    }
    if offsets == 0 {
        return Err(CroftonError::InvalidArgument("offset count must be positive".into()));
    }
    let exact = length_theorem1_with(poly, exec);
    let grid = offset_grid(offsets);
    Ok(exec.map(n_list.len() * offsets, |i| report(poly, n_list[i / offsets], grid[i % offsets], exact)))
}

/// Largest observed error per `n`, in first-seen order of `n`.
pub fn max_error_by_n(reports: &[CroftonReport]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|(n, _)| *n == r.n) {
            Some(entry) => entry.1 = entry.1.max(r.observed_error),
            None => out.push((r.n, r.observed_error)),
        }
    }
    out
}

/// Rows whose observed error exceeds the bound.
pub fn bound_violations(reports: &[CroftonReport]) -> Vec<CroftonReport> {
    reports.iter().copied().filter(CroftonReport::exceeds_bound).collect()
}

/// Least-squares slope of `log(max error)` against `log n`.
pub fn convergence_slope(reports: &[CroftonReport]) -> f64 {
    let pts: Vec<(f64, f64)> = max_error_by_n(reports)
        .into_iter()
        .map(|(n, e)| ((n as f64).ln(), e.ln()))
        .collect();
    let k = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Monte-Carlo estimate from directions drawn uniformly on `[0, π)`.
pub fn random_line_estimate(poly: &Polyline, samples: usize, seed: u64) -> Result<RandomLineEstimate, CroftonError> {
    random_line_estimate_with(poly, samples, seed, Execution::default())
}

pub fn random_line_estimate_with(
    poly: &Polyline,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<RandomLineEstimate, CroftonError> {
    if samples < 2 {
        return Err(CroftonError::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let mut rng = SplitMix64::new(seed);
    let directions: Vec<f64> = (0..samples).map(|_| PI * rng.next_f64()).collect();
    let values = exec.map(samples, |i| projection_sum(poly, directions[i]));
    let mean = stable_sum(values.iter().copied()) / samples as f64;
    let var = stable_sum(values.iter().map(|v| (v - mean).powi(2))) / (samples - 1) as f64;
    Ok(RandomLineEstimate {
        samples,
        seed,
        mean_projection: mean,
        estimate: FRAC_PI_2 * mean,
        standard_error: FRAC_PI_2 * var.sqrt() / (samples as f64).sqrt(),
    })
}
