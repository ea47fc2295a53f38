//! Rational functions over `Q` in named symbolic constants.
//!
//! Values are kept in a canonical form: numerator and denominator are
//! coprime polynomials with integer coefficients whose combined content is 1,
//! and the leading coefficient of the denominator is positive. Structural
//! equality is therefore field equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mpoly::{gcd, MPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstantExpr {
    num: MPoly,
    den: MPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

impl ConstantExpr {
    pub fn zero() -> Self {
        Self { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_parts(MPoly::constant(q), MPoly::one())
    }

    pub fn symbol(name: &str) -> Self {
        Self { num: MPoly::var(name), den: MPoly::one() }
    }

    fn from_parts(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let (_, ln) = num.integer_content();
        let (_, ld) = den.integer_content();
        let clear = BigRational::from_integer(ln.lcm(&ld));
        let (num, den) = (num.scale(&clear), den.scale(&clear));
        let (gn, _) = num.integer_content();
        let (gd, _) = den.integer_content();
        let mut factor = BigRational::new(BigInt::one(), gn.gcd(&gd));
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        Self { num: num.scale(&factor), den: den.scale(&factor) }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The value when no symbols occur.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.num.vars().union(&self.den.vars()).map(|s| s.to_string()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::from_parts(self.num.add(&other.num), self.den.clone());
        }
        Self::from_parts(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ConstantError> {
        if other.is_zero() {
            return Err(ConstantError::DivisionByZero);
        }
        Ok(Self::from_parts(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn recip(&self) -> Result<Self, ConstantError> {
        Self::one().div(self)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ConstantError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::from_parts(base.num.pow(k), base.den.pow(k)))
    }

    /// Substitutes rational values; `None` if a symbol is unbound or the
    /// denominator vanishes.
    pub fn evaluate(&self, values: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(values)? / d)
    }

    /// True when the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.as_rational().is_none() && !self.den.is_one_poly() || self.num.terms().count() > 1
    }

    /// True when the printed form starts with `-`.
    pub fn leading_negative(&self) -> bool {
        self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

trait OnePoly {
    fn is_one_poly(&self) -> bool;
}

impl OnePoly for MPoly {
    fn is_one_poly(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

impl Default for ConstantExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ConstantExpr {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for ConstantExpr {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl fmt::Display for ConstantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        let simple = |p: &MPoly, single_factor: bool| {
            p.terms().count() == 1
                && p.leading().is_some_and(|(m, c)| {
                    m.is_one() || (c.abs().is_one() && (!single_factor || m.factors().len() == 1))
                })
        };
        let wrap = |p: &MPoly, single_factor: bool| {
            if simple(p, single_factor) {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num, false), wrap(&self.den, true))
    }
}

impl FromStr for ConstantExpr {
    type Err = ConstantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ConstantError {
        ConstantError::Parse { column: self.pos + 1, message: message.to_string() }
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

    fn expr(&mut self) -> Result<ConstantExpr, ConstantError> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<ConstantExpr, ConstantError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs)
                    .map_err(|_| ConstantError::Parse { column: at + 1, message: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ConstantExpr, ConstantError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ConstantExpr, ConstantError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: i32 = digits
            .parse()
            .map_err(|_| ConstantError::Parse { column: start + 1, message: "expected exponent".into() })?;
        let e = if negative { -e } else { e };
        base.pow(e).map_err(|_| ConstantError::Parse { column: start + 1, message: "division by zero".into() })
    }

    fn atom(&mut self) -> Result<ConstantExpr, ConstantError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(ConstantExpr::symbol(std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<ConstantExpr, ConstantError> {
        let start = self.pos;
        let mut int = String::new();
        let mut frac = String::new();
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int.push(self.src[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac.push(self.src[self.pos] as char);
                self.pos += 1;
            }
        }
        if int.is_empty() && frac.is_empty() {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        let digits: BigInt = format!("{int}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Ok(ConstantExpr::rational(BigRational::new(digits, scale)))
    }
}
