use std::f64::consts::FRAC_PI_2;

use cauchy_core::calculus::{self, CalculusError, ContinuityVerdict, DeltaKernelParams};
use cauchy_core::crofton::{self, CroftonError, CroftonReport};
use cauchy_core::curvature::{self, CurvaturePoint, ErrorKind, MIN_WINDOW};
use cauchy_core::curve::{Curve, Polyline};
use cauchy_core::{Execution, Exponent, LcNumber, TruncationContext};

use crate::output::{Cell, Report};
use crate::spec;
use crate::Failure;

fn load_spec(arg: &str) -> Result<spec::CurveSpec, Failure> {
    let text = spec::load_text(arg).map_err(|e| Failure::Usage(e.to_string()))?;
    spec::parse(&text).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_expr(src: &str, vars: &[&str]) -> Result<cauchy_core::Expr, Failure> {
    cauchy_core::parse(src, vars)
        .map_err(|e| Failure::Usage(format!("cannot parse `{src}` at position {}: {}", e.position, e.message)))
}

fn calculus_failure(e: CalculusError) -> Failure {
    match e {
        CalculusError::InvalidArgument(_) | CalculusError::NotInfinitesimal(_) | CalculusError::InfinitePoint(_) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Numeric(other.to_string()),
    }
}

fn crofton_failure(e: CroftonError) -> Failure {
    match e {
        CroftonError::InvalidArgument(m) => Failure::Usage(m),
        other => Failure::Numeric(other.to_string()),
    }
}

fn report_row(r: &CroftonReport) -> Vec<Cell> {
    vec![
        Cell::Int(r.n as u64),
        Cell::Num(r.offset),
        Cell::Num(r.m),
        Cell::Num(r.estimate),
        Cell::Num(r.exact),
        Cell::Num(r.observed_error),
        Cell::Num(r.bound),
    ]
}

pub fn length(spec: &str, ns: &[usize], offsets: usize, random: Option<usize>, seed: u64) -> Result<Report, Failure> {
    let spec = load_spec(spec)?;
    let poly: Polyline = match spec.curve {
        Curve::Polyline(p) => p,
        Curve::Parametric(c) => crofton::discretize(&c, spec.segments).map_err(crofton_failure)?,
    };
    let rows = crofton::bound_sweep(&poly, ns, offsets).map_err(crofton_failure)?;
    let exact = rows.first().map_or_else(|| crofton::length_theorem1(&poly), |r| r.exact);

    let mut report = Report::new(&CroftonReport::CSV_HEADER);
    report.meta.push(("length", Cell::Num(exact)));
    report.meta.push(("segments", Cell::Int(poly.segments().len() as u64)));
    let violations = crofton::bound_violations(&rows);
    report.meta.push(("bound_violations", Cell::Int(violations.len() as u64)));
    if !violations.is_empty() {
        let mut ns: Vec<usize> = violations.iter().map(|r| r.n).collect();
        ns.dedup();
        eprintln!("note: observed error exceeds the bound in {} of {} rows (n = {ns:?})", violations.len(), rows.len());
    }
    for r in &rows {
        report.push(report_row(r));
    }
    if let Some(samples) = random {
        let mc = crofton::random_line_estimate(&poly, samples, seed).map_err(crofton_failure)?;
        report.push(vec![
            Cell::Text("mc".into()),
            Cell::Empty,
            Cell::Num(mc.mean_projection),
            Cell::Num(mc.estimate),
            Cell::Num(exact),
            Cell::Num((mc.estimate - exact).abs()),
            Cell::Num(mc.standard_error),
        ]);
    }
    Ok(report)
}

pub fn curvature(spec: &str, ts: &[f64], ctx: &TruncationContext) -> Result<Report, Failure> {
    if ctx.exponent_window() < Exponent::integer(MIN_WINDOW) {
        return Err(Failure::Usage(format!(
            "curvature needs an exponent window of at least {MIN_WINDOW}, got {}",
            ctx.exponent_window()
        )));
    }
    let curve = match load_spec(spec)?.curve {
        Curve::Parametric(c) => c,
        Curve::Polyline(_) => return Err(Failure::Usage("curvature needs a parametric curve".into())),
    };
    let mut report = Report::new(&CurvaturePoint::CSV_HEADER);
    let results = curvature::osculating_many(&curve, ts, ctx, Execution::default());
    for (&t, result) in ts.iter().zip(results) {
        let row = match result {
            Ok(p) => vec![
                Cell::Num(p.t),
                Cell::Num(p.x),
                Cell::Num(p.y),
                Cell::Num(p.tau),
                Cell::Num(p.rho),
                Cell::Num(p.cx),
                Cell::Num(p.cy),
                Cell::Text(p.method.name().into()),
            ],
            Err(e) if matches!(e.kind, ErrorKind::InfiniteRadius | ErrorKind::DegenerateParametrization) => {
                let (x, y) = curve.eval_real(t).map_err(|e| Failure::Numeric(e.to_string()))?;
                let tau = curvature::tangent_angle(&curve, t, ctx).map_or(Cell::Empty, Cell::Num);
                let rho = if e.kind == ErrorKind::InfiniteRadius { Cell::Num(f64::INFINITY) } else { Cell::Empty };
                vec![Cell::Num(t), Cell::Num(x), Cell::Num(y), tau, rho, Cell::Empty, Cell::Empty, Cell::Text(e.kind.name().into())]
            }
            Err(e) if e.kind == ErrorKind::Configuration => return Err(Failure::Usage(e.to_string())),
            Err(e) => return Err(Failure::Numeric(e.to_string())),
        };
        report.push(row);
    }
    Ok(report)
}

pub fn delta(src: &str, var: &str, a: f64, alphas: &[f64], epss: &[f64], points: usize) -> Result<Report, Failure> {
    let f = parse_expr(src, &[var])?;
    let mut report = Report::new(&["alpha", "eps", "value"]);
    for &alpha in alphas {
        for &eps in epss {
            let params = DeltaKernelParams { quadrature_points: points, ..DeltaKernelParams::new(a, alpha, eps) };
            let v = calculus::delta_kernel_integral(&f, &params).map_err(calculus_failure)?;
            report.push(vec![Cell::Num(alpha), Cell::Num(eps), Cell::Num(v)]);
        }
    }
    let args = if f.vars().is_empty() { vec![] } else { vec![a] };
    let fa = f.eval_real_at(&args).map_err(|e| Failure::Numeric(format!("F({a}): {e}")))?;
    report.footer = Some(vec![Cell::Text("target".into()), Cell::Empty, Cell::Num(FRAC_PI_2 * fa)]);
    Ok(report)
}

pub enum ProbeMode {
    Standard(Vec<f64>),
    Micro(String, String),
    Sum { term: String, ladder: Vec<u64>, ratio: u64 },
}

fn st_or_signed_inf(x: &LcNumber) -> f64 {
    x.standard_part().unwrap_or_else(|_| x.leading_coefficient().map_or(0.0, f64::signum) * f64::INFINITY)
}

fn verdict_row(v: &ContinuityVerdict) -> Vec<Cell> {
    vec![
        Cell::Text(v.point.to_string()),
        Cell::Text(v.increment.to_string()),
        Cell::Text(v.difference.to_string()),
        Cell::Num(st_or_signed_inf(&v.difference)),
        Cell::Bool(v.continuous),
    ]
}

pub const VERDICT_COLUMNS: [&str; 5] = ["point", "increment", "difference", "st_difference", "continuous"];

pub fn probe(expr: Option<&str>, var: &str, mode: ProbeMode, ctx: &TruncationContext) -> Result<Report, Failure> {
    let function = || -> Result<cauchy_core::Expr, Failure> {
        let src = expr.ok_or_else(|| Failure::Usage("a function expression is required".into()))?;
        parse_expr(src, &[var])
    };
    match mode {
        ProbeMode::Standard(points) => {
            let f = function()?;
            let mut report = Report::new(&VERDICT_COLUMNS);
            for x0 in points {
                let v = calculus::continuity_probe(&f, x0, ctx).map_err(calculus_failure)?;
                report.push(verdict_row(&v));
            }
            Ok(report)
        }
        ProbeMode::Micro(p, inc) => {
            let f = function()?;
            let lc = |s: &str| s.parse::<LcNumber>().map_err(|e| Failure::Usage(format!("cannot parse `{s}`: {e}")));
            let v = calculus::microcontinuity_probe(&f, &lc(&p)?, &lc(&inc)?, ctx).map_err(calculus_failure)?;
            let mut report = Report::new(&VERDICT_COLUMNS);
            report.push(verdict_row(&v));
            Ok(report)
        }
        ProbeMode::Sum { term, ladder, ratio } => {
            if expr.is_some() {
                return Err(Failure::Usage("--sum takes its term as the option value; drop the expression".into()));
            }
            let t = parse_expr(&term, &["k", "x"])?;
            let rows = calculus::sum_theorem_probe(&t, &ladder, ratio).map_err(calculus_failure)?;
            let mut report = Report::new(&["n", "n_prime", "x", "tail_value"]);
            for r in rows {
                report.push(vec![Cell::Int(r.n), Cell::Int(r.n_prime), Cell::Num(r.x), Cell::Num(r.tail_value)]);
            }
            Ok(report)
        }
    }
}
