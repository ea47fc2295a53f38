//! Terms, rankings and σ*-polynomials.
//!
//! A term `γ·y_i` pairs a shift exponent `γ ∈ Z^m` with an indeterminate
//! index. A σ*-polynomial is a finite sum of power products of terms with
//! coefficients in the constant field.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::constant::ConstantExpr;
use crate::lattice::leq_orthant;

/// Exponent vector of a translation `α_1^{k_1}...α_m^{k_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shift(Vec<i64>);

impl Shift {
    pub fn new(exponents: Vec<i64>) -> Self {
        Shift(exponents)
    }

    pub fn identity(m: usize) -> Self {
        Shift(vec![0; m])
    }

    /// `α_i^e`.
    pub fn unit(m: usize, i: usize, e: i64) -> Self {
        let mut v = vec![0; m];
        v[i] = e;
        Shift(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn order(&self) -> i64 {
        self.0.iter().map(|k| k.abs()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn compose(&self, other: &Shift) -> Shift {
        assert_eq!(self.dim(), other.dim(), "shift dimension mismatch");
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Shift {
        Shift(self.0.iter().map(|k| -k).collect())
    }

    /// `self - other`, the shift carrying `other` to `self`.
    pub fn difference(&self, other: &Shift) -> Shift {
        self.compose(&other.inverse())
    }
}

/// `γ·y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub shift: Shift,
    pub ind: usize,
}

impl Term {
    pub fn new(shift: Shift, ind: usize) -> Self {
        Term { shift, ind }
    }

    pub fn base(m: usize, ind: usize) -> Self {
        Term { shift: Shift::identity(m), ind }
    }

    pub fn order(&self) -> i64 {
        self.shift.order()
    }

    pub fn shifted(&self, gamma: &Shift) -> Term {
        Term { shift: gamma.compose(&self.shift), ind: self.ind }
    }

    fn standard_key(&self) -> (i64, Vec<i64>, &[i64], usize) {
        let abs = self.shift.0.iter().map(|k| k.abs()).collect();
        (self.order(), abs, &self.shift.0, self.ind)
    }
}

/// The standard ranking with identity priorities.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.standard_key().cmp(&other.standard_key())
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankingError {
    #[error("translation priority {0:?} is not a permutation")]
    BadTranslationPriority(Vec<usize>),
    #[error("indeterminate priority {0:?} is not a permutation")]
    BadIndeterminatePriority(Vec<usize>),
}

/// Orderly ranking of standard type.
///
/// Terms are compared by order, then by `|k_p|` for `p` in
/// `translation_priority`, then by `k_p` in the same sequence, then by the
/// position of the indeterminate in `indeterminate_priority` (later is
/// greater).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    translation_priority: Vec<usize>,
    indeterminate_priority: Vec<usize>,
    position: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&i| i < v.len() && !std::mem::replace(&mut seen[i], true))
}

impl Ranking {
    pub fn new(translation_priority: Vec<usize>, indeterminate_priority: Vec<usize>) -> Result<Self, RankingError> {
        if !is_permutation(&translation_priority) {
            return Err(RankingError::BadTranslationPriority(translation_priority));
        }
        if !is_permutation(&indeterminate_priority) {
            return Err(RankingError::BadIndeterminatePriority(indeterminate_priority));
        }
        let mut position = vec![0; indeterminate_priority.len()];
        for (p, &i) in indeterminate_priority.iter().enumerate() {
            position[i] = p;
        }
        Ok(Ranking { translation_priority, indeterminate_priority, position })
    }

    pub fn standard(m: usize, n: usize) -> Self {
        Self::new((0..m).collect(), (0..n).collect()).unwrap()
    }

    /// Standard ranking with the translations compared in the given order.
    pub fn with_translation_priority(priority: Vec<usize>, n: usize) -> Result<Self, RankingError> {
        Self::new(priority, (0..n).collect())
    }

    pub fn m(&self) -> usize {
        self.translation_priority.len()
    }

    pub fn n(&self) -> usize {
        self.indeterminate_priority.len()
    }

    pub fn translation_priority(&self) -> &[usize] {
        &self.translation_priority
    }

    pub fn indeterminate_priority(&self) -> &[usize] {
        &self.indeterminate_priority
    }

    pub fn is_standard(&self) -> bool {
        self.translation_priority.iter().enumerate().all(|(i, &p)| i == p)
            && self.indeterminate_priority.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn compare(&self, u: &Term, v: &Term) -> Ordering {
        let (a, b) = (u.shift.exponents(), v.shift.exponents());
        u.order()
            .cmp(&v.order())
            .then_with(|| {
                let abs = |x: &[i64]| self.translation_priority.iter().map(|&p| x[p].abs()).collect::<Vec<_>>();
                abs(a).cmp(&abs(b))
            })
            .then_with(|| {
                let raw = |x: &[i64]| self.translation_priority.iter().map(|&p| x[p]).collect::<Vec<_>>();
                raw(a).cmp(&raw(b))
            })
            .then_with(|| self.position[u.ind].cmp(&self.position[v.ind]))
    }

    pub fn max<'a>(&self, terms: impl IntoIterator<Item = &'a Term>) -> Option<&'a Term> {
        terms.into_iter().max_by(|a, b| self.compare(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    No,
    Improper,
    Proper,
}

/// Whether `v` is a transform of `u`: same indeterminate and `u.shift`
/// below `v.shift` in a common orthant.
pub fn is_transform(u: &Term, v: &Term) -> Transform {
    if u.ind != v.ind || !leq_orthant(u.shift.exponents(), v.shift.exponents()).unwrap_or(false) {
        Transform::No
    } else if u == v {
        Transform::Improper
    } else {
        Transform::Proper
    }
}

/// Product of terms with positive exponents, sorted by the standard ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PowerProduct(Vec<(Term, u32)>);

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct(Vec::new())
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Term, u32)>) -> Self {
        let mut map: BTreeMap<Term, u32> = BTreeMap::new();
        for (t, e) in factors {
            *map.entry(t).or_default() += e;
        }
        PowerProduct(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Term, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, t: &Term) -> u32 {
        self.0.iter().find(|(u, _)| u == t).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &PowerProduct) -> PowerProduct {
        Self::from_factors(self.0.iter().chain(&other.0).cloned())
    }

    fn without(&self, t: &Term) -> PowerProduct {
        PowerProduct(self.0.iter().filter(|(u, _)| u != t).cloned().collect())
    }

    fn shifted(&self, gamma: &Shift) -> PowerProduct {
        Self::from_factors(self.0.iter().map(|(t, e)| (t.shifted(gamma), *e)))
    }

    /// Order used for printing: by the highest factor first, descending.
    fn display_cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPolynomial {
    m: usize,
    n: usize,
    monomials: BTreeMap<PowerProduct, ConstantExpr>,
}

impl SigmaPolynomial {
    pub fn zero(m: usize, n: usize) -> Self {
        SigmaPolynomial { m, n, monomials: BTreeMap::new() }
    }

    pub fn constant(m: usize, n: usize, c: ConstantExpr) -> Self {
        let mut p = Self::zero(m, n);
        p.add_monomial(PowerProduct::one(), c);
        p
    }

    pub fn term(m: usize, n: usize, t: Term) -> Self {
        Self::monomial(m, n, ConstantExpr::one(), PowerProduct::from_factors([(t, 1)]))
    }

    /// `c·γ·y_i` for the term with the given exponents.
    pub fn shifted_var(n: usize, exponents: &[i64], ind: usize, c: ConstantExpr) -> Self {
        let m = exponents.len();
        let t = Term::new(Shift::new(exponents.to_vec()), ind);
        Self::monomial(m, n, c, PowerProduct::from_factors([(t, 1)]))
    }

    pub fn monomial(m: usize, n: usize, c: ConstantExpr, pp: PowerProduct) -> Self {
        let mut p = Self::zero(m, n);
        for (t, _) in pp.factors() {
            assert!(t.shift.dim() == m && t.ind < n, "term outside the ambient ring");
        }
        p.add_monomial(pp, c);
        p
    }

    fn add_monomial(&mut self, pp: PowerProduct, c: ConstantExpr) {
        if c.is_zero() {
            return;
        }
        match self.monomials.entry(pp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&PowerProduct, &ConstantExpr)> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// No term occurs.
    pub fn is_ground(&self) -> bool {
        self.monomials.keys().all(PowerProduct::is_one)
    }

    pub fn ground_value(&self) -> Option<ConstantExpr> {
        if !self.is_ground() {
            return None;
        }
        Some(self.monomials.get(&PowerProduct::one()).cloned().unwrap_or_default())
    }

    fn check(&self, other: &Self) {
        assert!(self.m == other.m && self.n == other.n, "σ*-polynomials over different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (pp, c) in &other.monomials {
            out.add_monomial(pp.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SigmaPolynomial {
            m: self.m,
            n: self.n,
            monomials: self.monomials.iter().map(|(pp, c)| (pp.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.m, self.n);
        for (pa, ca) in &self.monomials {
            for (pb, cb) in &other.monomials {
                out.add_monomial(pa.mul(pb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.m, self.n, ConstantExpr::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &ConstantExpr) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.n);
        }
        SigmaPolynomial {
            m: self.m,
            n: self.n,
            monomials: self.monomials.iter().map(|(pp, a)| (pp.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn mul_term_power(&self, t: &Term, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        let f = PowerProduct::from_factors([(t.clone(), e)]);
        SigmaPolynomial {
            m: self.m,
            n: self.n,
            monomials: self.monomials.iter().map(|(pp, c)| (pp.mul(&f), c.clone())).collect(),
        }
    }

    /// The image under the translation `γ`.
    pub fn apply_shift(&self, gamma: &Shift) -> Self {
        assert_eq!(gamma.dim(), self.m, "shift dimension mismatch");
        SigmaPolynomial {
            m: self.m,
            n: self.n,
            monomials: self.monomials.iter().map(|(pp, c)| (pp.shifted(gamma), c.clone())).collect(),
        }
    }

    pub fn terms(&self) -> BTreeSet<Term> {
        self.monomials.keys().flat_map(|pp| pp.0.iter().map(|(t, _)| t.clone())).collect()
    }

    pub fn leader(&self, rk: &Ranking) -> Option<Term> {
        let terms = self.terms();
        rk.max(terms.iter()).cloned()
    }

    pub fn degree_in(&self, t: &Term) -> u32 {
        self.monomials.keys().map(|pp| pp.degree_in(t)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.monomials.keys().map(PowerProduct::degree).max().unwrap_or(0)
    }

    /// Coefficient of `t^d` when `self` is viewed as a polynomial in `t`.
    pub fn coefficient_of(&self, t: &Term, d: u32) -> Self {
        let mut out = Self::zero(self.m, self.n);
        for (pp, c) in &self.monomials {
            if pp.degree_in(t) == d {
                out.add_monomial(pp.without(t), c.clone());
            }
        }
        out
    }

    pub fn degree_in_leader(&self, rk: &Ranking) -> u32 {
        self.leader(rk).map_or(0, |u| self.degree_in(&u))
    }

    /// Coefficient of the highest power of the leader.
    pub fn initial(&self, rk: &Ranking) -> Option<Self> {
        let u = self.leader(rk)?;
        Some(self.coefficient_of(&u, self.degree_in(&u)))
    }

    /// Total degree at most one in the terms.
    pub fn is_linear(&self) -> bool {
        self.total_degree() <= 1
    }

    /// The leader has degree one and occurs in exactly one monomial.
    pub fn is_quasi_linear(&self, rk: &Ranking) -> bool {
        let Some(u) = self.leader(rk) else { return false };
        let mut with_u = self.monomials.keys().filter(|pp| pp.degree_in(&u) > 0);
        matches!((with_u.next(), with_u.next()), (Some(pp), None) if pp.degree_in(&u) == 1)
    }

    /// Divides by the initial when that is a nonzero constant.
    pub fn monic(&self, rk: &Ranking) -> Self {
        match self.initial(rk).and_then(|i| i.ground_value()) {
            Some(c) if !c.is_zero() => self.scale(&c.recip().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn map_coefficients<E>(&self, mut f: impl FnMut(&ConstantExpr) -> Result<ConstantExpr, E>) -> Result<Self, E> {
        let mut out = Self::zero(self.m, self.n);
        for (pp, c) in &self.monomials {
            out.add_monomial(pp.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Substitutes rational values for the symbolic constants. `None` if a
    /// symbol is unbound or a denominator vanishes.
    pub fn bind(&self, values: &BTreeMap<String, BigRational>) -> Option<Self> {
        self.map_coefficients(|c| c.evaluate(values).map(ConstantExpr::rational).ok_or(())).ok()
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.monomials.values().flat_map(ConstantExpr::symbols).collect()
    }

    pub fn display_with<'a>(&'a self, names: &'a Names) -> impl fmt::Display + 'a {
        Displayed { p: self, names }
    }
}

/// Printable names for translations and indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub translations: Vec<String>,
    pub indeterminates: Vec<String>,
}

impl Names {
    pub fn default_for(m: usize, n: usize) -> Self {
        let translations = (1..=m).map(|i| format!("a{i}")).collect();
        let indeterminates = if n == 1 { vec!["y".to_string()] } else { (1..=n).map(|i| format!("y{i}")).collect() };
        Names { translations, indeterminates }
    }

    pub fn term(&self, t: &Term) -> String {
        let mut parts = Vec::new();
        for (k, &e) in t.shift.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.translations[k].clone()),
                _ => parts.push(format!("{}^{}", self.translations[k], e)),
            }
        }
        parts.push(self.indeterminates[t.ind].clone());
        parts.join(" ")
    }

    fn power_product(&self, pp: &PowerProduct) -> String {
        pp.factors()
            .iter()
            .rev()
            .map(|(t, e)| match (*e, t.shift.is_identity()) {
                (1, _) => self.term(t),
                (e, true) => format!("{}^{e}", self.term(t)),
                (e, false) => format!("({})^{e}", self.term(t)),
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

struct Displayed<'a> {
    p: &'a SigmaPolynomial,
    names: &'a Names,
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let mut mons: Vec<_> = self.p.monomials.iter().collect();
        mons.sort_by(|a, b| b.0.display_cmp(a.0));
        for (k, (pp, c)) in mons.into_iter().enumerate() {
            let negative = c.leading_negative() && !c.is_compound();
            let mag = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if pp.is_one() {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.is_compound() {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            f.write_str(&self.names.power_product(pp))?;
        }
        Ok(())
    }
}

impl fmt::Display for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Names::default_for(self.m, self.n);
        let shown = Displayed { p: self, names: &names };
        write!(f, "{shown}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("polynomial {index} lives in a ring with m = {m}, n = {n}")]
    Dimension { index: usize, m: usize, n: usize },
    #[error("symbol {0} is not declared")]
    UndeclaredSymbol(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
}

/// Symbolic constant with its non-vanishing annotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantDecl {
    pub name: String,
    pub nonzero: bool,
}

impl ConstantDecl {
    pub fn nonzero(name: &str) -> Self {
        ConstantDecl { name: name.to_string(), nonzero: true }
    }
}

/// Named translations, indeterminates and constants with a list of
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSystem {
    pub names: Names,
    pub constants: Vec<ConstantDecl>,
    pub polynomials: Vec<SigmaPolynomial>,
}

impl DifferenceSystem {
    pub fn new(
        names: Names,
        constants: Vec<ConstantDecl>,
        polynomials: Vec<SigmaPolynomial>,
    ) -> Result<Self, SystemError> {
        let sys = DifferenceSystem { names, constants, polynomials };
        sys.validate()?;
        Ok(sys)
    }

    pub fn m(&self) -> usize {
        self.names.translations.len()
    }

    pub fn n(&self) -> usize {
        self.names.indeterminates.len()
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        let mut seen = BTreeSet::new();
        let all = self
            .names
            .translations
            .iter()
            .chain(&self.names.indeterminates)
            .chain(self.constants.iter().map(|c| &c.name));
        for name in all {
            if !seen.insert(name.as_str()) {
                return Err(SystemError::DuplicateName(name.clone()));
            }
        }
        for (index, p) in self.polynomials.iter().enumerate() {
            if p.m() != self.m() || p.n() != self.n() {
                return Err(SystemError::Dimension { index, m: p.m(), n: p.n() });
            }
            for s in p.symbols() {
                if !self.constants.iter().any(|c| c.name == s) {
                    return Err(SystemError::UndeclaredSymbol(s));
                }
            }
        }
        Ok(())
    }

    pub fn is_linear(&self) -> bool {
        self.polynomials.iter().all(SigmaPolynomial::is_linear)
    }

    /// The same system with every constant replaced by a rational value.
    pub fn bind(&self, values: &BTreeMap<String, BigRational>) -> Option<Self> {
        let polynomials = self.polynomials.iter().map(|p| p.bind(values)).collect::<Option<Vec<_>>>()?;
        Some(DifferenceSystem { names: self.names.clone(), constants: Vec::new(), polynomials })
    }

    pub fn display_polynomial(&self, p: &SigmaPolynomial) -> String {
        p.display_with(&self.names).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[i64], ind: usize) -> Term {
        Term::new(Shift::new(e.to_vec()), ind)
    }

    fn lin(n: usize, parts: &[(i64, &[i64], usize)]) -> SigmaPolynomial {
        let m = parts[0].1.len();
        parts.iter().fold(SigmaPolynomial::zero(m, n), |acc, (c, e, i)| {
            acc.add(&SigmaPolynomial::shifted_var(n, e, *i, ConstantExpr::integer(*c)))
        })
    }

    #[test]
    fn standard_ranking_examples() {
        let rk = Ranking::standard(2, 1);
        assert_eq!(rk.compare(&t(&[1, 0], 0), &t(&[0, 1], 0)), Ordering::Greater);
        assert_eq!(rk.compare(&t(&[-1, 0], 0), &t(&[0, 1], 0)), Ordering::Greater);
        assert_eq!(rk.compare(&t(&[1, 0], 0), &t(&[-1, 0], 0)), Ordering::Greater);
        assert_eq!(rk.compare(&t(&[0, 0], 0), &t(&[0, -1], 0)), Ordering::Less);
        let flipped = Ranking::with_translation_priority(vec![1, 0], 1).unwrap();
        assert_eq!(flipped.compare(&t(&[1, 0], 0), &t(&[0, 1], 0)), Ordering::Less);
        let rk2 = Ranking::standard(1, 2);
        assert_eq!(rk2.compare(&t(&[0], 1), &t(&[0], 0)), Ordering::Greater);
        let swapped = Ranking::new(vec![0], vec![1, 0]).unwrap();
        assert_eq!(swapped.compare(&t(&[0], 1), &t(&[0], 0)), Ordering::Less);
    }

    #[test]
    fn bad_rankings() {
        assert!(Ranking::new(vec![0, 0], vec![0]).is_err());
        assert!(Ranking::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn transforms() {
        assert_eq!(is_transform(&t(&[1, 0], 0), &t(&[2, 1], 0)), Transform::Proper);
        assert_eq!(is_transform(&t(&[1, 0], 0), &t(&[2, -1], 0)), Transform::Proper);
        assert_eq!(is_transform(&t(&[1, 0], 0), &t(&[-1, 0], 0)), Transform::No);
        assert_eq!(is_transform(&t(&[1, 0], 0), &t(&[1, 0], 0)), Transform::Improper);
        assert_eq!(is_transform(&t(&[1, 0], 0), &t(&[2, 0], 1)), Transform::No);
    }

    #[test]
    fn leaders_of_diffusion_forward() {
        // a1^2 y - 2 a1 y + y - a2 y + y
        let a = lin(1, &[(1, &[2, 0], 0), (-2, &[1, 0], 0), (2, &[0, 0], 0), (-1, &[0, 1], 0)]);
        let rk = Ranking::standard(2, 1);
        assert_eq!(a.leader(&rk), Some(t(&[2, 0], 0)));
        assert_eq!(a.apply_shift(&Shift::new(vec![-1, 0])).leader(&rk), Some(t(&[-1, 1], 0)));
        assert_eq!(a.apply_shift(&Shift::new(vec![-1, -1])).leader(&rk), Some(t(&[1, -1], 0)));
        assert_eq!(a.apply_shift(&Shift::new(vec![-2, -1])).leader(&rk), Some(t(&[-2, -1], 0)));
        assert!(a.is_linear());
        assert!(a.is_quasi_linear(&rk));
    }

    #[test]
    fn quasi_linearity() {
        let rk = Ranking::standard(2, 1);
        let y = SigmaPolynomial::term(2, 1, t(&[0, 0], 0));
        let a1y = SigmaPolynomial::term(2, 1, t(&[1, 0], 0));
        let a2y = SigmaPolynomial::term(2, 1, t(&[0, 1], 0));
        // y*a1 y + a1 y: the leader sits in two monomials.
        let p = y.mul(&a1y).add(&a1y);
        assert!(!p.is_quasi_linear(&rk));
        assert!(!p.is_linear());
        // a1 y + y^2 + a2 y: leader only in the linear monomial.
        let q = a1y.add(&y.mul(&y)).add(&a2y);
        assert!(q.is_quasi_linear(&rk));
        assert_eq!(q.initial(&rk).unwrap().ground_value(), Some(ConstantExpr::one()));
    }

    #[test]
    fn coefficient_extraction() {
        let rk = Ranking::standard(1, 1);
        let y = SigmaPolynomial::term(1, 1, t(&[0], 0));
        let a1y = SigmaPolynomial::term(1, 1, t(&[1], 0));
        let p = y.mul(&a1y).mul(&a1y).add(&a1y.scale(&ConstantExpr::integer(3)));
        assert_eq!(p.degree_in_leader(&rk), 2);
        assert_eq!(p.initial(&rk).unwrap(), y);
        assert_eq!(p.coefficient_of(&t(&[1], 0), 1), SigmaPolynomial::constant(1, 1, ConstantExpr::integer(3)));
    }

    #[test]
    fn display() {
        let a = lin(1, &[(1, &[2, 0], 0), (-2, &[1, 0], 0), (2, &[0, 0], 0), (-1, &[0, 1], 0)]);
        assert_eq!(a.to_string(), "a1^2 y - 2*a1 y - a2 y + 2*y");
        let b = lin(1, &[(1, &[-1, -1], 0)]).scale(&"k + 1".parse().unwrap());
        assert_eq!(b.to_string(), "(k + 1)*a1^-1 a2^-1 y");
        let y = SigmaPolynomial::term(2, 1, t(&[0, 0], 0));
        let sq = y.mul(&y).sub(&SigmaPolynomial::constant(2, 1, ConstantExpr::integer(1)));
        assert_eq!(sq.to_string(), "y^2 - 1");
    }

    #[test]
    fn binding() {
        let p = lin(1, &[(1, &[1], 0)]).scale(&"a/b".parse().unwrap());
        let mut vals = BTreeMap::new();
        vals.insert("a".into(), BigRational::from_integer(2.into()));
        vals.insert("b".into(), BigRational::from_integer(4.into()));
        let bound = p.bind(&vals).unwrap();
        assert_eq!(bound.to_string(), "1/2*a1 y");
        vals.insert("b".into(), BigRational::from_integer(0.into()));
        assert!(p.bind(&vals).is_none());
    }
}
