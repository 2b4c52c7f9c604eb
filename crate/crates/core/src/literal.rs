//! A small expression grammar shared by every textual input.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*     juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are an ASCII letter followed by letters, digits or `_`,
//! so `X1`, `E2`, `a4` and `t` are all single names.

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[st..i].parse().expect("digits");
            out.push((Tok::Int(n), st));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].to_string()), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::new(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError::new(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(ParseError::new(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Var(name, pos))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::new(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(ParseError::new(pos, format!("unexpected token {t:?}"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parses an expression.
pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { toks, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in `ring`, resolving identifiers with `var` and divisors with `inv`.
    pub fn eval<R: Ring>(
        &self,
        ring: &R,
        var: &dyn Fn(&str) -> Option<R::Elem>,
        inv: &dyn Fn(&R::Elem) -> Option<R::Elem>,
    ) -> Result<R::Elem, ParseError> {
        Ok(match self {
            Expr::Int(n) => ring.from_int(n),
            Expr::Var(name, pos) => {
                var(name).ok_or_else(|| ParseError::new(*pos, format!("unknown variable '{name}'")))?
            }
            Expr::Add(a, b) => ring.add(&a.eval(ring, var, inv)?, &b.eval(ring, var, inv)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring, var, inv)?, &b.eval(ring, var, inv)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring, var, inv)?, &b.eval(ring, var, inv)?),
            Expr::Div(a, b, pos) => {
                let d = b.eval(ring, var, inv)?;
                let di = inv(&d).ok_or_else(|| ParseError::new(*pos, "division by a non-invertible value"))?;
                ring.mul(&a.eval(ring, var, inv)?, &di)
            }
            Expr::Neg(a) => ring.neg(&a.eval(ring, var, inv)?),
            Expr::Pow(a, e) => ring.pow(&a.eval(ring, var, inv)?, u64::from(*e)),
        })
    }
}

/// Parses `[c0, c1, ...]` into integers.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>, ParseError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(0, "expected a bracketed list"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| ParseError::new(0, format!("bad list entry '{}'", x.trim())))
        })
        .collect()
}
