//! Univariate numerical polynomials over the rationals.
//!
//! Polynomials are stored densely in the power basis. The binomial basis
//! `f(t) = sum a_i * C(t+i, i)` is computed on demand, it is the canonical
//! form for dimension polynomials and has integer coefficients whenever
//! `f` comes out of a lattice computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NumericalPolynomial {
    // coeffs[i] is the coefficient of t^i; no trailing zeros.
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NumericalPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer power-basis coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// `C(t + m - b, m)` expanded as a polynomial in `t`.
    pub fn shifted_binomial(m: usize, b: i64) -> Self {
        let mut p = Self::one();
        // (t + m - b)(t + m - b - 1)...(t - b + 1) / m!
        for k in 0..m as i64 {
            let factor = Self::from_coeffs(vec![rat(m as i64 - b - k), BigRational::one()]);
            p = &p * &factor;
        }
        let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    pub fn evaluate(&self, r: i64) -> BigRational {
        let x = rat(r);
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficients `a_0..a_d` with `self = sum a_i * C(t+i, i)`.
    pub fn binomial_basis(&self) -> Vec<BigRational> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![BigRational::zero(); d + 1];
        let mut rest = self.clone();
        while let Some(k) = rest.degree() {
            let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
            let a = rest.coeffs[k].clone() * BigRational::from_integer(fact);
            rest = &rest - &Self::shifted_binomial(k, 0).scale(&a);
            out[k] = a;
        }
        out
    }

    pub fn from_binomial_basis(a: &[BigRational]) -> Self {
        a.iter().enumerate().fold(Self::zero(), |acc, (i, ai)| &acc + &Self::shifted_binomial(i, 0).scale(ai))
    }

    /// Order by values at all sufficiently large integers.
    pub fn eventual_cmp(&self, other: &Self) -> Ordering {
        let diff = other - self;
        match diff.leading_coefficient() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Less,
            Some(_) => Ordering::Greater,
        }
    }

    /// The binomial form `a_d*C(t+d,d) + ... + a_0`.
    pub fn binomial_display(&self) -> String {
        let a = self.binomial_basis();
        if a.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in a.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            push_sign(&mut out, c);
            let mag = c.abs();
            if i == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&format!("C(t+{i},{i})"));
            }
        }
        out
    }
}

fn push_sign(out: &mut String, c: &BigRational) {
    match (out.is_empty(), c.is_negative()) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

impl fmt::Display for NumericalPolynomial {
    /// Expanded form, e.g. `2t^2 + 7t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            push_sign(&mut out, c);
            let mag = c.abs();
            if i == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&mag.to_string());
                } else {
                    out.push_str(&format!("({mag})"));
                }
            }
            out.push('t');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
        f.write_str(&out)
    }
}

impl Add for &NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn add(self, rhs: Self) -> NumericalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NumericalPolynomial::from_coeffs((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Add for NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn add(self, rhs: Self) -> NumericalPolynomial {
        &self + &rhs
    }
}

impl Sub for &NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn sub(self, rhs: Self) -> NumericalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn neg(self) -> NumericalPolynomial {
        NumericalPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn mul(self, rhs: Self) -> NumericalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return NumericalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NumericalPolynomial::from_coeffs(out)
    }
}

impl std::iter::Sum for NumericalPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}
