//! Text form of polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | VAR ['^' INT] | '(' expr ')' ['^' INT]
//! VAR    := letter (letter | digit | '_')*
//! ```
//!
//! The printer writes terms in decreasing order with the leading `+`
//! suppressed, e.g. `2*x^2 + y^2 - y - 1` or `-1/2*x*y + 3`.

use std::fmt;

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::rational::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let e = self.integer()?;
        u32::try_from(e).or_else(|_| {
            self.pos = at;
            self.err("exponent too large")
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(Polynomial::constant(self.ring, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
                let Some(i) = self.ring.var_index(name) else {
                    self.pos = start;
                    return Err(Error::UnknownVariable(name.to_string()));
                };
                let e = self.exponent()?;
                Ok(Polynomial::term(
                    self.ring,
                    Rational::one(),
                    Monomial::var(self.ring.nvars(), i, e),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses a comma-separated list of polynomials, optionally wrapped in
/// `<...>` or `[...]`. Commas inside parentheses do not split.
pub fn parse_polynomial_list(text: &str, ring: &Ring) -> Result<Vec<Polynomial>> {
    let trimmed = text.trim();
    let (body, offset) = match (trimmed.chars().next(), trimmed.chars().last()) {
        (Some('<'), Some('>')) | (Some('['), Some(']')) => (&trimmed[1..trimmed.len() - 1], 1),
        _ => (trimmed, 0),
    };
    let base = text.len() - text.trim_start().len() + offset;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = body.as_bytes();
    for i in 0..=bytes.len() {
        let c = bytes.get(i).copied();
        match c {
            Some(b'(') => depth += 1,
            Some(b')') => depth -= 1,
            Some(b',') | None if depth == 0 => {
                let piece = &body[start..i];
                out.push(parse_polynomial(piece, ring).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse {
                        pos: pos + base + start,
                        msg,
                    },
                    other => other,
                })?);
                start = i + 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for i in m.support() {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.var_name(i))?;
        let e = m.exponent(i);
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(crate) fn write_polynomial(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, t) in p.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let c = t.coeff.abs();
        if t.mono.is_one() {
            write!(f, "{c}")?;
        } else {
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write_monomial(f, p.ring(), &t.mono)?;
        }
    }
    Ok(())
}
