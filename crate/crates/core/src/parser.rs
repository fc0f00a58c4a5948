//! Infix potentials in `x`, `y`, `z` and named rational constants.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = primary [ "^" exponent ] ;
//! exponent = [ "-" | "+" ] ( integer | "(" exponent ")" ) [ "^" exponent ] ;
//! primary = integer | ident | "(" expr ")" ;
//! ident   = letter { letter | digit | "_" } ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactmath::{Poly, RatFun, Rational, VarSet};

/// Largest accepted absolute exponent.
pub const MAX_EXPONENT: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PotentialAst {
    Number(BigInt),
    Var(usize),
    Const(String),
    Add(Box<PotentialAst>, Box<PotentialAst>),
    Sub(Box<PotentialAst>, Box<PotentialAst>),
    Mul(Box<PotentialAst>, Box<PotentialAst>),
    /// Divisor offset is kept for error reporting.
    Div(Box<PotentialAst>, Box<PotentialAst>, usize),
    Pow(Box<PotentialAst>, i64, usize),
    Neg(Box<PotentialAst>),
}

/// Parses `text` and normalizes it to a reduced rational function in `x, y, z`.
pub fn parse_potential(text: &str, constants: &HashMap<String, Rational>) -> Result<RatFun> {
    let ast = parse_ast(text)?;
    evaluate(&ast, constants, &VarSet::xyz())
}

pub fn parse_ast(text: &str) -> Result<PotentialAst> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn evaluate(ast: &PotentialAst, constants: &HashMap<String, Rational>, vars: &VarSet) -> Result<RatFun> {
    use PotentialAst::*;
    Ok(match ast {
        Number(n) => RatFun::constant(vars, Rational::from_integer(n.clone())),
        Var(i) => RatFun::from_poly(Poly::var(vars, *i)),
        Const(name) => match constants.get(name) {
            Some(c) => RatFun::constant(vars, c.clone()),
            None => return Err(Error::usage(format!("unbound constant {name:?}"))),
        },
        Add(a, b) => evaluate(a, constants, vars)?.add(&evaluate(b, constants, vars)?)?,
        Sub(a, b) => evaluate(a, constants, vars)?.sub(&evaluate(b, constants, vars)?)?,
        Mul(a, b) => evaluate(a, constants, vars)?.mul(&evaluate(b, constants, vars)?)?,
        Div(a, b, off) => {
            let d = evaluate(b, constants, vars)?;
            if d.is_zero() {
                return Err(Error::Parse { offset: *off, message: "denominator normalizes to zero".into() });
            }
            evaluate(a, constants, vars)?.div(&d)?
        }
        Pow(a, k, off) => {
            let base = evaluate(a, constants, vars)?;
            if *k < 0 && base.is_zero() {
                return Err(Error::Parse { offset: *off, message: "negative power of zero".into() });
            }
            base.powi(*k)?
        }
        Neg(a) => evaluate(a, constants, vars)?.neg(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, message: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<PotentialAst> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = PotentialAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = PotentialAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<PotentialAst> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = PotentialAst::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let off = self.pos;
                lhs = PotentialAst::Div(Box::new(lhs), Box::new(self.unary()?), off);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<PotentialAst> {
        if self.eat(b'-') {
            return Ok(PotentialAst::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PotentialAst> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let off = self.pos;
            let k = self.exponent()?;
            return Ok(PotentialAst::Pow(Box::new(base), k, off));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut k = if self.eat(b'(') {
            let k = self.exponent()?;
            self.expect(b')')?;
            k
        } else {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {}
                Some(c) if c.is_ascii_alphabetic() || c == b'.' => {
                    return Err(self.error("exponent must be an integer literal"));
                }
                _ => return Err(self.error("expected integer exponent")),
            }
            let n = self.integer()?;
            n.to_i64().filter(|v| v.abs() <= MAX_EXPONENT).ok_or_else(|| Error::Parse {
                offset: start,
                message: format!("exponent exceeds {MAX_EXPONENT} in magnitude"),
            })?
        };
        if neg {
            k = -k;
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            if e < 0 {
                return Err(Error::Parse { offset: start, message: "exponent must be an integer".into() });
            }
            let v = BigInt::from(k).pow(e as u32);
            k = v.to_i64().filter(|v| v.abs() <= MAX_EXPONENT).ok_or_else(|| Error::Parse {
                offset: start,
                message: format!("exponent exceeds {MAX_EXPONENT} in magnitude"),
            })?;
        }
        Ok(k)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') || self.src.get(self.pos).is_some_and(|c| matches!(c, b'e' | b'E')) {
            return Err(self.error("only integer literals are accepted"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| Error::Parse { offset: start, message: "expected integer".into() })
    }

    fn primary(&mut self) -> Result<PotentialAst> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(PotentialAst::Number(self.integer()?)),
            Some(b'.') => Err(self.error("only integer literals are accepted")),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                Ok(match name {
                    "x" => PotentialAst::Var(0),
                    "y" => PotentialAst::Var(1),
                    "z" => PotentialAst::Var(2),
                    _ => PotentialAst::Const(name.to_string()),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Reads `name=p/q` bindings as supplied on the command line.
pub fn parse_binding(s: &str) -> Result<(String, Rational)> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| Error::usage(format!("constant binding {s:?} is not of the form name=p/q")))?;
    let name = name.trim();
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid || matches!(name, "x" | "y" | "z") {
        return Err(Error::usage(format!("invalid constant name {name:?}")));
    }
    let v = crate::exactmath::rational::parse(value)?;
    Ok((name.to_string(), v))
}

/// True when every binding is strictly positive.
pub fn all_positive(constants: &HashMap<String, Rational>) -> bool {
    constants.values().all(Signed::is_positive)
}
