//! A small expression language for user-supplied functions and curves.
//!
//! The same tree evaluates over `f64` and over [`LcNumber`], which is how
//! infinitesimal arguments get fed into ordinary formulas.

mod eval;
mod parser;
mod render;

use std::fmt;

use thiserror::Error;

use crate::lc::{AnalyticFn, Exponent, LcError};

pub use parser::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sqrt,
    Abs,
    Analytic(AnalyticFn),
}

impl UnaryOp {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sqrt" => Some(UnaryOp::Sqrt),
            "abs" => Some(UnaryOp::Abs),
            other => other.parse().ok().map(UnaryOp::Analytic),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
            UnaryOp::Analytic(f) => f.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
        }
    }
}

/// Expression tree. Variables are indices into the owning [`Expr`]'s
/// declared variable list; powers carry their folded rational exponent.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Constant(f64),
    Variable(usize),
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, Exponent),
}

/// A parsed expression together with the variables it was declared over.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    vars: Vec<String>,
}

impl Expr {
    pub fn new(root: Node, vars: Vec<String>) -> Self {
        Self { root, vars }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Returns the same tree declared over different variable names.
    pub fn with_var_names(&self, vars: Vec<String>) -> Self {
        assert_eq!(vars.len(), self.vars.len(), "variable count mismatch");
        Self { root: self.root.clone(), vars }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render::write_node(f, &self.root, &self.vars, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("result is not finite")]
    NonFinite,
    #[error(transparent)]
    Lc(#[from] LcError),
}
