//! Arithmetic expressions over chart coordinates.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | name | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | exp | sqrt
//! ```
//!
//! `^` binds tighter than unary minus on its left and is right-associative,
//! so `-x^2 = -(x^2)` and `2^3^2 = 2^9`. The only built-in constant is `pi`.

use std::collections::BTreeMap;
use std::fmt;

use geodyn_core::HyperDual;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub at: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.at + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Names visible to expressions: coordinates by index, then named constants.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub coordinates: Vec<String>,
    pub constants: BTreeMap<String, f64>,
}

impl Scope {
    /// `x0, x1, …` are always accepted alongside the named coordinates.
    pub fn new(coordinates: Vec<String>, constants: BTreeMap<String, f64>) -> Self {
        Self { coordinates, constants }
    }

    fn lookup(&self, name: &str) -> Option<Expr> {
        if let Some(i) = self.coordinates.iter().position(|c| c == name) {
            return Some(Expr::Var(i));
        }
        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(i) = rest.parse::<usize>() {
                if i < self.coordinates.len() {
                    return Some(Expr::Var(i));
                }
            }
        }
        if name == "pi" {
            return Some(Expr::Num(std::f64::consts::PI));
        }
        self.constants.get(name).map(|v| Expr::Num(*v))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Name(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let v = text
                .parse::<f64>()
                .map_err(|_| ParseError { at: start, message: format!("bad number '{text}'") })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(src[start..i].to_string())));
        } else if "+-*/^".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '(' {
            out.push((i, Tok::LParen));
            i += 1;
        } else if c == ')' {
            out.push((i, Tok::RParen));
            i += 1;
        } else {
            return Err(ParseError { at: i, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: &'a Scope,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(a, _)| *a).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { at: self.at(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Pow(base.into(), exp.into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.at();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.close()?;
                Ok(e)
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "exp" => Some(Func::Exp),
                    "sqrt" => Some(Func::Sqrt),
                    _ => None,
                };
                if let Some(f) = func {
                    if self.peek() != Some(&Tok::LParen) {
                        return self.err(format!("expected '(' after {name}"));
                    }
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.close()?;
                    return Ok(Expr::Call(f, arg.into()));
                }
                self.scope
                    .lookup(&name)
                    .ok_or_else(|| ParseError { at, message: format!("unknown name '{name}'") })
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            self.err("expected ')'")
        }
    }
}

pub fn parse(src: &str, scope: &Scope) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), scope };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, x: &[HyperDual]) -> HyperDual {
        match self {
            Expr::Num(v) => HyperDual::constant(*v),
            Expr::Var(i) => x[*i],
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, b) => match **b {
                Expr::Num(p) if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 => a.eval(x).powi(p as i32),
                Expr::Num(p) => a.eval(x).powf(p),
                _ => a.eval(x).pow(b.eval(x)),
            },
            Expr::Call(f, a) => {
                let v = a.eval(x);
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let xs: Vec<HyperDual> = x.iter().map(|v| HyperDual::constant(*v)).collect();
        self.eval(&xs).re
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }
}
