//! Text grammar for polynomials in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored; `^` binds tighter than unary minus, which binds
//! tighter than `*`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::unipoly::UniPoly;

/// Literal exponents above this are rejected before any expansion.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(BigRational),
    X,
    Y,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Evaluates the tree in `k[x, y]`, reducing literals into `k`.
    pub fn to_bipoly(&self, k: &Field) -> Result<BiPoly> {
        Ok(match self {
            PolyExpr::Num(q) => BiPoly::constant(k, k.from_rational(q)?),
            PolyExpr::X => BiPoly::x(k),
            PolyExpr::Y => BiPoly::y(k),
            PolyExpr::Neg(a) => -&a.to_bipoly(k)?,
            PolyExpr::Add(a, b) => &a.to_bipoly(k)? + &b.to_bipoly(k)?,
            PolyExpr::Sub(a, b) => &a.to_bipoly(k)? - &b.to_bipoly(k)?,
            PolyExpr::Mul(a, b) => &a.to_bipoly(k)? * &b.to_bipoly(k)?,
            PolyExpr::Pow(a, e) => a.to_bipoly(k)?.pow(*e),
        })
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Num(q) => write!(f, "{q}"),
            PolyExpr::X => write!(f, "x"),
            PolyExpr::Y => write!(f, "y"),
            PolyExpr::Neg(a) => write!(f, "-({a})"),
            PolyExpr::Add(a, b) => write!(f, "({a} + {b})"),
            PolyExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            PolyExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            PolyExpr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

impl FromStr for PolyExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<PolyExpr> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
        }
        Ok(e)
    }
}

/// Field selector: `q` or `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field> {
        match self {
            FieldSpec::Rationals => Ok(Field::rationals()),
            FieldSpec::Prime(p) => Field::prime(*p),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = t
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("field '{s}': expected 'q' or 'fp:<prime>'")))?;
        Field::prime(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn parse_poly(text: &str, k: &Field) -> Result<BiPoly> {
    text.parse::<PolyExpr>()?.to_bipoly(k)
}

/// A polynomial in `x` alone.
pub fn parse_unipoly(text: &str, k: &Field) -> Result<UniPoly> {
    parse_poly(text, k)?.as_uni_x().ok_or_else(|| Error::InvalidInput(format!("'{text}' must not involve y")))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        if self.eat(b'-') {
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::Parse { pos: at, msg: format!("exponent exceeds {MAX_EXPONENT}") })?;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(PolyExpr::X)
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(PolyExpr::Y)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                    return Ok(PolyExpr::Num(BigRational::new(n, d)));
                }
                Ok(PolyExpr::Num(BigRational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }
}
