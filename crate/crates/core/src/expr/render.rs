use std::fmt;

use super::{BinaryOp, Node, UnaryOp};

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn precedence(node: &Node) -> u8 {
    match node {
        Node::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => ADD,
        Node::Binary(..) => MUL,
        Node::Unary(UnaryOp::Neg, _) => NEG,
        Node::Pow(..) => POW,
        Node::Constant(c) if *c < 0.0 || c.is_sign_negative() => NEG,
        _ => ATOM,
    }
}

/// Writes `node`, parenthesizing when its precedence is below `min`.
pub(super) fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, vars: &[String], min: u8) -> fmt::Result {
    let paren = precedence(node) < min;
    if paren {
        f.write_str("(")?;
    }
    match node {
        Node::Constant(c) => write!(f, "{c:?}")?,
        Node::Variable(i) => f.write_str(&vars[*i])?,
        Node::Unary(UnaryOp::Neg, child) => {
            f.write_str("-")?;
            write_node(f, child, vars, NEG)?;
        }
        Node::Unary(op, child) => {
            write!(f, "{}(", op.name())?;
            write_node(f, child, vars, 0)?;
            f.write_str(")")?;
        }
        Node::Binary(op, l, r) => {
            let p = precedence(node);
            write_node(f, l, vars, p)?;
            write!(f, " {} ", op.symbol())?;
            write_node(f, r, vars, p + 1)?;
        }
        Node::Pow(base, e) => {
            write_node(f, base, vars, ATOM)?;
            write!(f, "^{e}")?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    pub(crate) const CORPUS: &[&str] = &[
        "sin(t)/t",
        "a/(a^2 + (m - 0)^2)",
        "-t^2",
        "(-t)^2",
        "1 - (2 - t)",
        "1 / (2 * t) / 3",
        "t^(1/2) + t^-1 + t^(-3/2)",
        "exp(t)*cos(t) - log(abs(t) + 1)",
        "sqrt(1 + tan(t)^2)",
        "atan(t)/(1 + t*t)",
        "--t",
        "t*-t",
        "2.5e-7*t + pi - e",
    ];

    #[test]
    fn render_parse_roundtrip() {
        for src in CORPUS {
            let e = parse(src, &["t", "a", "m"]).unwrap();
            let text = e.to_string();
            let back = parse(&text, &["t", "a", "m"]).unwrap_or_else(|err| panic!("{text}: {err}"));
            assert_eq!(back, e, "{src} -> {text}");
        }
    }

    #[test]
    fn renders_minimal_parens() {
        let e = parse("(a + m) * (t - 1) ^ 2", &["t", "a", "m"]).unwrap();
        assert_eq!(e.to_string(), "(a + m) * (t - 1.0)^2");
    }
}
