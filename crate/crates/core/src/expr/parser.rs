//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | const | var | func '(' expr ')' | '(' expr ')'
//! ```

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

use super::{BinaryOp, Expr, Node, ParseError, UnaryOp};
use crate::lc::Exponent;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.chars.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number(start).map(|v| (start, Tok::Num(v)));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.chars[start..self.pos].iter().collect())));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((start, Tok::Op(c)));
        }
        Err(ParseError { position: start, message: format!("unexpected character `{c}`") })
    }

    fn number(&mut self, start: usize) -> Result<f64, ParseError> {
        let digits = |lx: &mut Lexer| {
            let from = lx.pos;
            while lx.chars.get(lx.pos).is_some_and(char::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - from
        };
        let mut n = digits(self);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(ParseError { position: start, message: "malformed number".into() });
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                return Err(ParseError { position: mark, message: "malformed exponent in number".into() });
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>()
            .map_err(|_| ParseError { position: start, message: format!("malformed number `{text}`") })
    }
}

struct Parser<'a> {
    lexer: Lexer,
    tok: Tok,
    tok_pos: usize,
    vars: &'a [&'a str],
}

/// Parses `source` over the declared variables `allowed_vars`.
pub fn parse(source: &str, allowed_vars: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        lexer: Lexer { chars: source.chars().collect(), pos: 0 },
        tok: Tok::End,
        tok_pos: 0,
        vars: allowed_vars,
    };
    p.advance()?;
    let root = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(Expr::new(root, allowed_vars.iter().map(|s| s.to_string()).collect()))
}

impl Parser<'_> {
    fn advance(&mut self) -> Result<(), ParseError> {
        let (pos, tok) = self.lexer.next()?;
        self.tok = tok;
        self.tok_pos = pos;
        Ok(())
    }

    fn error(&self, message: &str) -> ParseError {
        let found = match &self.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
        };
        ParseError { position: self.tok_pos, message: format!("{message}, found {found}") }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.tok == Tok::Op(c) {
            self.advance()
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Op('+') => BinaryOp::Add,
                Tok::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Op('*') => BinaryOp::Mul,
                Tok::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.advance()?;
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.tok == Tok::Op('-') {
            self.advance()?;
            let child = self.unary()?;
            return Ok(Node::Unary(UnaryOp::Neg, Box::new(child)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.advance()?;
        let at = self.tok_pos;
        let exponent = self.unary()?;
        let folded = fold_rational(&exponent).ok_or_else(|| ParseError {
            position: at,
            message: "exponent must fold to a rational constant".into(),
        })?;
        Ok(Node::Pow(Box::new(base), Exponent::from(folded)))
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.advance()?;
                Ok(Node::Constant(v))
            }
            Tok::Op('(') => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let at = self.tok_pos;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    self.advance()?;
                    return Ok(Node::Variable(i));
                }
                match name.as_str() {
                    "pi" => {
                        self.advance()?;
                        return Ok(Node::Constant(std::f64::consts::PI));
                    }
                    "e" => {
                        self.advance()?;
                        return Ok(Node::Constant(std::f64::consts::E));
                    }
                    _ => {}
                }
                let Some(op) = UnaryOp::from_name(&name) else {
                    return Err(ParseError { position: at, message: format!("unknown identifier `{name}`") });
                };
                self.advance()?;
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Node::Unary(op, Box::new(arg)))
            }
            _ => Err(self.error("expected an operand")),
        }
    }
}

/// Smallest-denominator rational that reproduces `v` exactly as binary64.
fn f64_to_ratio(v: f64) -> Option<Ratio<i64>> {
    if !v.is_finite() {
        return None;
    }
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        return Some(Ratio::from_integer(v as i64));
    }
    // Continued-fraction convergents, denominators up to 10^6.
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut x = v;
    for _ in 0..40 {
        let a = x.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > 1_000_000 {
            return None;
        }
        if h2 as f64 / k2 as f64 == v {
            return Some(Ratio::new(h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a as f64;
        if frac == 0.0 {
            return None;
        }
        x = 1.0 / frac;
    }
    None
}

fn fold_rational(node: &Node) -> Option<Ratio<i64>> {
    match node {
        Node::Constant(v) => f64_to_ratio(*v),
        Node::Variable(_) => None,
        Node::Unary(UnaryOp::Neg, c) => fold_rational(c).map(|r| -r),
        Node::Unary(..) => None,
        Node::Binary(op, l, r) => {
            let (l, r) = (fold_rational(l)?, fold_rational(r)?);
            match op {
                BinaryOp::Add => l.checked_add(&r),
                BinaryOp::Sub => l.checked_sub(&r),
                BinaryOp::Mul => l.checked_mul(&r),
                BinaryOp::Div if r.is_zero() => None,
                BinaryOp::Div => l.checked_div(&r),
            }
        }
        Node::Pow(b, e) => {
            let b = fold_rational(b)?;
            if !e.is_integer() || e.numerator().abs() > 64 || (b.is_zero() && e.is_negative()) {
                return None;
            }
            let n = e.numerator();
            let mut acc = Ratio::from_integer(1);
            for _ in 0..n.abs() {
                acc = acc.checked_mul(&b)?;
            }
            if n < 0 { Some(acc.recip()) } else { Some(acc) }
        }
    }
}
