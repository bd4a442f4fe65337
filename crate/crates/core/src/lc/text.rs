//! Textual form `c0 + c1*eps^q1 + …`, exponents as reduced fractions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Exponent, LcError, LcNumber};

/// Shortest round-tripping decimal for a coefficient.
pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms().iter().enumerate() {
            let mag = if i == 0 {
                fmt_real(c)
            } else {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
                fmt_real(c.abs())
            };
            f.write_str(&mag)?;
            if e.is_zero() {
                continue;
            }
            f.write_str("*eps")?;
            if e != Exponent::ONE {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> LcError {
        LcError::Parse { offset: self.pos, message: message.into() }
    }

    fn number(&mut self) -> Result<f64, LcError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() {
            let b = bytes[end];
            let exp_sign = (b == b'+' || b == b'-') && end > start && matches!(bytes[end - 1], b'e' | b'E');
            if b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'E' || exp_sign {
                end += 1;
            } else {
                break;
            }
        }
        self.src[start..end]
            .parse::<f64>()
            .inspect(|_| self.pos = end)
            .map_err(|_| self.err("expected a number"))
    }

    fn integer(&mut self) -> Result<i64, LcError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat('-');
        self.skip_ws();
        let digits = self.src[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            self.pos = start;
            return Err(self.err("expected an integer exponent"));
        }
        let v: i64 = self.src[self.pos..self.pos + digits].parse().map_err(|_| self.err("exponent overflow"))?;
        self.pos += digits;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent, LcError> {
        if self.eat('(') {
            let p = self.integer()?;
            let q = if self.eat('/') { self.integer()? } else { 1 };
            if q == 0 {
                return Err(self.err("zero denominator"));
            }
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            Ok(Exponent::new(p, q))
        } else {
            Ok(Exponent::integer(self.integer()?))
        }
    }

    fn eps(&mut self) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with("eps") {
            self.pos += 3;
            true
        } else {
            false
        }
    }

    /// `coeff`, `coeff*eps[^q]`, or `eps[^q]`.
    fn term(&mut self) -> Result<(Exponent, f64), LcError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.number()?;
                if !self.eat('*') {
                    return Ok((Exponent::ZERO, v));
                }
                v
            }
            _ => 1.0,
        };
        if !self.eps() {
            return Err(self.err("expected a coefficient or `eps`"));
        }
        let e = if self.eat('^') { self.exponent()? } else { Exponent::ONE };
        Ok((e, coeff))
    }
}

impl FromStr for LcNumber {
    type Err = LcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        let mut terms = Vec::new();
        let mut sign = if cur.eat('-') { -1.0 } else { 1.0 };
        loop {
            let (e, c) = cur.term()?;
            terms.push((e, sign * c));
            if cur.eat('+') {
                sign = 1.0;
            } else if cur.eat('-') {
                sign = -1.0;
            } else if cur.peek().is_none() {
                break;
            } else {
                return Err(cur.err("expected `+`, `-` or end of input"));
            }
        }
        LcNumber::from_terms(terms)
    }
}

impl Serialize for LcNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LcNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
