//! Sparse multivariate polynomials over `Q` in named variables.
//!
//! Only what the constant field needs: ring arithmetic, exact division,
//! and a recursive primitive-PRS gcd. Monomials are ordered
//! lexicographically with variables compared by name.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Sym = Arc<str>;

/// Power product of named variables; sorted by name, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(Vec<(Sym, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Mono(vec![(Sym::from(name), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Sym, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &str) -> u32 {
        self.0.iter().find(|(s, _)| &**s == v).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut map: BTreeMap<Sym, u32> = self.0.iter().cloned().collect();
        for (s, e) in &other.0 {
            *map.entry(s.clone()).or_default() += e;
        }
        Mono(map.into_iter().collect())
    }

    fn div(&self, other: &Mono) -> Option<Mono> {
        let mut map: BTreeMap<Sym, u32> = self.0.iter().cloned().collect();
        for (s, e) in &other.0 {
            let slot = map.get_mut(s)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(Mono(map.into_iter().filter(|&(_, e)| e > 0).collect()))
    }

    fn without(&self, v: &str) -> Mono {
        Mono(self.0.iter().filter(|(s, _)| &**s != v).cloned().collect())
    }

    /// Lexicographic order, earlier variable names more significant.
    pub fn lex_cmp(&self, other: &Mono) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((a, ea)), Some((b, eb))) => match a.cmp(b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(s)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::var(name), BigRational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Mono::one()).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn mul_mono(&self, m: &Mono, c: &BigRational) -> Self {
        Self { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Exact quotient, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            let t = rm.div(&lm)?;
            let c = rc / &lc;
            r = r.sub(&divisor.mul_mono(&t, &c));
            q.add_term(t, c);
        }
        Some(q)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`.
    fn coeffs_in(&self, v: &str) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    fn content_in(&self, v: &str) -> MPoly {
        self.coeffs_in(v).iter().fold(MPoly::zero(), |g, c| gcd(&g, c))
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn evaluate(&self, values: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in &m.0 {
                let x = values.get(&**s)?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Some(total)
    }

    /// Gcd of numerators and lcm of denominators of all coefficients.
    pub(crate) fn integer_content(&self) -> (BigInt, BigInt) {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        (g, l)
    }
}

/// Sparse pseudo-remainder of `f` by `g` in the variable `v`.
fn prem(f: &MPoly, g: &MPoly, v: &str) -> MPoly {
    let dg = g.degree_in(v);
    let g_coeffs = g.coeffs_in(v);
    let lc = g_coeffs[dg as usize].clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v)[dr as usize].clone();
        let shift = MPoly::from_terms([(Mono(vec![(Sym::from(v), dr - dg)]), BigRational::one())]);
        let shift = if dr == dg { MPoly::one() } else { shift };
        r = r.mul(&lc).sub(&g.mul(&lr).mul(&shift));
    }
    r
}

/// Monic (lexicographic leading coefficient 1) gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    let v = va.iter().chain(vb.iter()).min().unwrap().clone();
    if !va.contains(&v) {
        return gcd(a, &b.content_in(&v));
    }
    if !vb.contains(&v) {
        return gcd(&a.content_in(&v), b);
    }
    let ca = a.content_in(&v);
    let cb = b.content_in(&v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let (mut f, mut g) = if pa.degree_in(&v) >= pb.degree_in(&v) { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        let r = prem(&f, &g, &v);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let cr = r.content_in(&v);
            r.div_exact(&cr).expect("content divides")
        };
    }
    let h = if f.degree_in(&v) == 0 {
        MPoly::one()
    } else {
        let cf = f.content_in(&v);
        f.div_exact(&cf).expect("content divides")
    };
    c.mul(&h).monic()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.lex_cmp(a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> MPoly {
        MPoly::var(n)
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(BigRational::from_integer(n.into()))
    }

    #[test]
    fn lex_order() {
        let a = Mono::var("a");
        let b2 = Mono(vec![(Sym::from("b"), 2)]);
        assert_eq!(a.lex_cmp(&b2), Ordering::Greater);
        assert_eq!(Mono::one().lex_cmp(&a), Ordering::Less);
    }

    #[test]
    fn exact_division() {
        let p = v("a").add(&c(1)).mul(&v("b").sub(&c(2)));
        assert_eq!(p.div_exact(&v("b").sub(&c(2))), Some(v("a").add(&c(1))));
        assert_eq!(p.div_exact(&v("a")), None);
    }

    #[test]
    fn gcd_of_products() {
        let x = v("a").add(&c(1));
        let y = v("a").sub(&v("b"));
        let z = v("b").mul(&v("b")).add(&c(3));
        let p = x.mul(&y).mul(&y);
        let q = y.mul(&z).mul(&x).scale(&BigRational::from_integer(6.into()));
        let g = gcd(&p, &q);
        assert_eq!(g, x.mul(&y).monic());
        assert_eq!(gcd(&z, &x), MPoly::one());
        assert_eq!(gcd(&MPoly::zero(), &y.scale(&BigRational::from_integer(3.into()))), y.monic());
    }

    #[test]
    fn display() {
        let p = v("a").mul(&v("b")).scale(&BigRational::from_integer(2.into())).sub(&v("a")).add(&c(1));
        assert_eq!(p.to_string(), "2*a*b - a + 1");
    }
}
