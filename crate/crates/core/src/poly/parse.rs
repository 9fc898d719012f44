//! The shared expression grammar.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" integer)?
//! atom  := integer | name | "(" expr ")"
//! ```
//!
//! Juxtaposition is rejected (`2x`, `x y`, `x(y)`), and `/` only divides by
//! nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::field::{BaseField, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Token::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// Where parsed expressions are evaluated.
pub trait ExprContext {
    type Elem: Clone;
    fn field(&self) -> BaseField;
    fn constant(&self, c: Scalar) -> Self::Elem;
    fn variable(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn as_constant(&self, a: &Self::Elem) -> Option<Scalar>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.constant(-self.field().one()), a)
    }
}

struct Parser<'a, C: ExprContext> {
    tokens: Vec<Token>,
    pos: usize,
    ctx: &'a C,
    src: &'a str,
}

impl<C: ExprContext> Parser<'_, C> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<C::Elem> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if op == '-' { self.ctx.neg(&rhs) } else { rhs };
            acc = self.ctx.add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<C::Elem> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.ctx.mul(&acc, &rhs);
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let c = self
                        .ctx
                        .as_constant(&rhs)
                        .ok_or_else(|| self.err("division by a non-constant"))?;
                    let inv = c.inv().ok_or_else(|| self.err("division by zero"))?;
                    acc = self.ctx.mul(&acc, &self.ctx.constant(inv));
                }
                Some(Token::Int(_) | Token::Name(_) | Token::Op('(')) => {
                    return Err(self.err("implicit multiplication is not allowed"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<C::Elem> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.ctx.neg(&v))
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<C::Elem> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    u32::try_from(n).map_err(|_| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            };
            let mut acc = self.ctx.constant(self.ctx.field().one());
            for _ in 0..e {
                acc = self.ctx.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<C::Elem> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self.ctx.constant(self.ctx.field().from_bigint(&n)))
            }
            Some(Token::Name(v)) => {
                self.pos += 1;
                self.ctx.variable(&v)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, a name or '('")),
        }
    }
}

/// Parses and evaluates an expression in an arbitrary context.
pub fn parse_in<C: ExprContext>(src: &str, ctx: &C) -> Result<C::Elem> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, ctx, src };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct CommContext<'a>(&'a Arc<PolyRing>);

impl ExprContext for CommContext<'_> {
    type Elem = Polynomial;

    fn field(&self) -> BaseField {
        self.0.field()
    }
    fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(self.0, c)
    }
    fn variable(&self, name: &str) -> Result<Polynomial> {
        self.0
            .var_index(name)
            .map(|i| Polynomial::var(self.0, i))
            .ok_or_else(|| Error::Input(format!("unknown variable {name:?}")))
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b)
    }
    fn as_constant(&self, a: &Polynomial) -> Option<Scalar> {
        if a.is_zero() {
            Some(self.0.field().zero())
        } else {
            a.as_nonzero_constant().cloned()
        }
    }
}

/// Parses a commutative polynomial over `ring`.
pub fn parse_poly(src: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    parse_in(src, &CommContext(ring))
}

/// Splits a comma-separated list of expressions, respecting parentheses.
pub fn split_list(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
