//! Curve specs: `{"polyline": [[x, y], ...]}` or
//! `{"parametric": {"x": "...", "y": "...", "t0": 0, "t1": 1}, "segments": 1024}`.

use std::io::Read;

use cauchy_core::curve::{Curve, ParametricCurve, Polyline};
use serde_json::Value;

pub const DEFAULT_SEGMENTS: usize = 1024;

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub curve: Curve,
    pub segments: usize,
}

/// A spec error with the JSON path where it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "spec error at {}: {}", self.path, self.message)
    }
}

fn err(path: &str, message: impl Into<String>) -> SpecError {
    SpecError { path: path.to_string(), message: message.into() }
}

/// Reads the spec text: inline JSON, `-` for stdin, or a file path.
pub fn load_text(arg: &str) -> Result<String, SpecError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    let mut text = String::new();
    if arg == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| err("$", format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(arg).map_err(|e| err("$", format!("reading {arg}: {e}")))?;
    }
    Ok(text)
}

fn number(v: &Value, path: &str) -> Result<f64, SpecError> {
    v.as_f64().ok_or_else(|| err(path, format!("expected a number, got {v}")))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, SpecError> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

pub fn parse(text: &str) -> Result<CurveSpec, SpecError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| err("$", format!("malformed JSON at line {} column {}: {e}", e.line(), e.column())))?;
    let obj = root.as_object().ok_or_else(|| err("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "polyline" | "parametric" | "segments") {
            return Err(err(&format!("$.{key}"), "unknown field"));
        }
    }
    let segments = match obj.get("segments") {
        None => DEFAULT_SEGMENTS,
        Some(v) => v
            .as_u64()
            .filter(|&n| n >= 1)
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| err("$.segments", format!("expected a positive integer, got {v}")))?,
    };
    let curve = match (obj.get("polyline"), obj.get("parametric")) {
        (Some(_), Some(_)) => return Err(err("$", "give either `polyline` or `parametric`, not both")),
        (None, None) => return Err(err("$", "missing `polyline` or `parametric`")),
        (Some(p), None) => Curve::Polyline(polyline(p)?),
        (None, Some(p)) => Curve::Parametric(parametric(p)?),
    };
    Ok(CurveSpec { curve, segments })
}

fn polyline(v: &Value) -> Result<Polyline, SpecError> {
    let items = v.as_array().ok_or_else(|| err("$.polyline", "expected an array of [x, y] pairs"))?;
    let mut vertices = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let path = format!("$.polyline[{i}]");
        match item.as_array().map(Vec::as_slice) {
            Some([x, y]) => vertices.push((number(x, &format!("{path}[0]"))?, number(y, &format!("{path}[1]"))?)),
            _ => return Err(err(&path, format!("expected an [x, y] pair, got {item}"))),
        }
    }
    Polyline::new(vertices).map_err(|e| err("$.polyline", e.to_string()))
}

fn parametric(v: &Value) -> Result<ParametricCurve, SpecError> {
    let obj = v.as_object().ok_or_else(|| err("$.parametric", "expected an object"))?;
    let text = |key: &str| -> Result<cauchy_core::Expr, SpecError> {
        let path = format!("$.parametric.{key}");
        let src = field(obj, key, "$.parametric")?.as_str().ok_or_else(|| err(&path, "expected an expression string"))?;
        cauchy_core::parse(src, &["t"])
            .map_err(|e| err(&path, format!("{} at position {}", e.message, e.position)))
    };
    let (x, y) = (text("x")?, text("y")?);
    let t0 = number(field(obj, "t0", "$.parametric")?, "$.parametric.t0")?;
    let t1 = number(field(obj, "t1", "$.parametric")?, "$.parametric.t1")?;
    ParametricCurve::new(x, y, t0, t1).map_err(|e| err("$.parametric", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_shapes() {
        let s = parse(r#"{"polyline": [[0,0],[1,0],[1,1]]}"#).unwrap();
        assert!(matches!(s.curve, Curve::Polyline(ref p) if p.length() == 2.0));
        assert_eq!(s.segments, DEFAULT_SEGMENTS);
        let s = parse(r#"{"parametric": {"x": "cos(t)", "y": "sin(t)", "t0": 0, "t1": 6.28}, "segments": 64}"#).unwrap();
        assert!(matches!(s.curve, Curve::Parametric(_)));
        assert_eq!(s.segments, 64);
    }

    #[test]
    fn errors_cite_paths() {
        let path = |t: &str| parse(t).unwrap_err().path;
        assert_eq!(path(r#"{"polyline": [[0,0],[1,"a"]]}"#), "$.polyline[1][1]");
        assert_eq!(path(r#"{"polyline": [[0,0],[1]]}"#), "$.polyline[1]");
        assert_eq!(path(r#"{"parametric": {"x": "cos(t", "y": "t", "t0": 0, "t1": 1}}"#), "$.parametric.x");
        assert_eq!(path(r#"{"parametric": {"x": "t", "y": "t", "t0": 0}}"#), "$.parametric");
        assert_eq!(path(r#"{"polyline": [[0,0],[1,1]], "segments": 0}"#), "$.segments");
        assert_eq!(path(r#"{"polyline": [[0,0],[1,1]], "extra": 1}"#), "$.extra");
        assert_eq!(path("{\"polyline\": "), "$");
        assert_eq!(path("[]"), "$");
    }
}
