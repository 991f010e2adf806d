//! Expression grammar for sequence families, e.g. `1/(n+1)`, `log(n+2)`,
//! `(-1)^n * n^-0.9`, `0.99^n`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?          right associative
//! atom   := number | 'n' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
//! ident  := log | ln | exp | sqrt | sin | cos | tan | abs | floor
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Exp,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Abs,
    Floor,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "log" | "ln" => Func::Ln,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "abs" => Func::Abs,
            "floor" => Func::Floor,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Ln => "log",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Abs => "abs",
            Func::Floor => "floor",
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Ln => x.ln(),
            Func::Exp => x.exp(),
            Func::Sqrt => x.sqrt(),
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Abs => x.abs(),
            Func::Floor => x.floor(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Index,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Num(c) => *c,
            Expr::Index => n,
            Expr::Neg(a) => -a.eval(n),
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Sub(a, b) => a.eval(n) - b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Div(a, b) => a.eval(n) / b.eval(n),
            Expr::Pow(a, b) => pow(a.eval(n), b.eval(n)),
            Expr::Call(f, a) => f.apply(a.eval(n)),
        }
    }

    /// Canonical, fully parenthesized rendering; parses back to an equal tree.
    pub fn render(&self) -> String {
        match self {
            Expr::Num(c) => {
                if *c < 0.0 {
                    format!("({c:?})")
                } else {
                    format!("{c:?}")
                }
            }
            Expr::Index => "n".to_string(),
            Expr::Neg(a) => format!("(-{})", a.render()),
            Expr::Add(a, b) => format!("({} + {})", a.render(), b.render()),
            Expr::Sub(a, b) => format!("({} - {})", a.render(), b.render()),
            Expr::Mul(a, b) => format!("({} * {})", a.render(), b.render()),
            Expr::Div(a, b) => format!("({} / {})", a.render(), b.render()),
            Expr::Pow(a, b) => format!("({} ^ {})", a.render(), b.render()),
            Expr::Call(f, a) => format!("{}({})", f.name(), a.render()),
        }
    }
}

/// Integer exponents go through repeated multiplication so `(-1)^n` is exact.
fn pow(base: f64, exp: f64) -> f64 {
    if exp == exp.trunc() && exp.abs() <= i32::MAX as f64 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let begin = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
                match name {
                    "n" => Ok(Expr::Index),
                    "pi" => Ok(Expr::Num(core::f64::consts::PI)),
                    "e" => Ok(Expr::Num(core::f64::consts::E)),
                    _ => {
                        let func = Func::from_name(name).ok_or(Error::Parse {
                            position: begin,
                            message: format!("unknown identifier '{name}'"),
                        })?;
                        if !self.eat(b'(') {
                            return Err(self.error("expected '(' after function name"));
                        }
                        let arg = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.error("expected ')'"));
                        }
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let begin = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                digits(self);
            } else {
                // `2e` is the number 2 followed by the constant e
                self.pos = save;
            }
        }
        let text = core::str::from_utf8(&self.src[begin..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| Error::Parse {
                position: begin,
                message: format!("bad number '{text}'"),
            })
    }
}
