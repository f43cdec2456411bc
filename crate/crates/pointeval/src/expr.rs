//! Rational expressions over named coordinates.
//!
//! Syntax: integers, names (`[A-Za-z_][A-Za-z0-9_]*`), `+ - * /`, integer
//! powers `^k` with `k` possibly negative, parentheses, and implicit
//! multiplication by juxtaposition (`3a^3`, `2(x+1)`, `x y`). Powers bind
//! tighter than unary minus, so `-x^2` is `-(x^2)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::PointEvalError;
use crate::field::{FieldElem, SmallField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PointEvalError> {
    let err = |offset: usize, reason: &str| PointEvalError::Parse { text: text.into(), offset, reason: reason.into() };
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse().map_err(|_| err(start, "integer too large"))?;
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(o, _)| *o)
    }

    fn fail<T>(&self, reason: &str) -> Result<T, PointEvalError> {
        Err(PointEvalError::Parse { text: self.text.into(), offset: self.offset(), reason: reason.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, PointEvalError> {
        let mut e = self.product()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, PointEvalError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_) | Tok::Op('('))) {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, PointEvalError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, PointEvalError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = self.eat('-');
        let Some(Tok::Int(k)) = self.peek().cloned() else {
            return self.fail("expected an integer exponent");
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return self.fail("expected ')'");
        }
        let k = i64::try_from(k).or_else(|_| self.fail("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, PointEvalError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(Expr::Name(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.fail("expected a number, a name or '('"),
            None => self.fail("unexpected end of expression"),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, PointEvalError> {
        let mut p = Parser { text, toks: tokenize(text)?, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.toks.len() {
            return p.fail("unexpected trailing input");
        }
        Ok(e)
    }

    /// An equation `lhs = rhs` as the expression `lhs - rhs`. Text without
    /// `=` is read as `expr = 0`.
    pub fn parse_equation(text: &str) -> Result<Expr, PointEvalError> {
        match text.split_once('=') {
            None => Expr::parse(text),
            Some((l, r)) => {
                if r.contains('=') {
                    return Err(PointEvalError::Parse { text: text.into(), offset: 0, reason: "more than one '='".into() });
                }
                Ok(Expr::Sub(Box::new(Expr::parse(l)?), Box::new(Expr::parse(r)?)))
            }
        }
    }

    /// Every name occurring in the expression.
    pub fn names(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Int(_) => {}
            Expr::Name(n) => {
                out.insert(n);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }

    /// Value in `field`, with names resolved by `lookup`. The field's
    /// generator name is resolved first.
    pub fn eval(
        &self,
        field: &SmallField,
        lookup: &dyn Fn(&str) -> Option<FieldElem>,
    ) -> Result<FieldElem, PointEvalError> {
        Ok(match self {
            Expr::Int(v) => field.from_int((*v % field.characteristic()) as i64),
            Expr::Name(n) => {
                if !n.is_empty() && n == field.generator_name() {
                    field.generator()
                } else {
                    lookup(n).ok_or_else(|| PointEvalError::UnknownName(n.clone()))?
                }
            }
            Expr::Neg(a) => field.neg(&a.eval(field, lookup)?),
            Expr::Add(a, b) => field.add(&a.eval(field, lookup)?, &b.eval(field, lookup)?),
            Expr::Sub(a, b) => field.sub(&a.eval(field, lookup)?, &b.eval(field, lookup)?),
            Expr::Mul(a, b) => field.mul(&a.eval(field, lookup)?, &b.eval(field, lookup)?),
            Expr::Div(a, b) => {
                let d = b.eval(field, lookup)?;
                let inv = field.inv(&d).ok_or_else(|| PointEvalError::DivisionByZero(b.to_string()))?;
                field.mul(&a.eval(field, lookup)?, &inv)
            }
            Expr::Pow(a, k) => {
                let base = a.eval(field, lookup)?;
                field.pow(&base, *k).ok_or_else(|| PointEvalError::DivisionByZero(self.to_string()))?
            }
        })
    }

    /// Value of an expression that mentions no coordinates.
    pub fn constant(&self, field: &SmallField) -> Result<FieldElem, PointEvalError> {
        self.eval(field, &|_| None)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Name(n) => f.write_str(n),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => {
                match **a {
                    Expr::Int(_) | Expr::Name(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
        }
    }
}
