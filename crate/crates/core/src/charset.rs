//! Reduction, autoreduced sets and characteristic sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::constant::ConstantExpr;
use crate::diffpoly::{is_transform, Ranking, Shift, SigmaPolynomial, Term, Transform};

/// Rounds of coherence completion before giving up.
pub const MAX_COMPLETION_ROUNDS: usize = 64;
/// Largest shift box radius tried by the orbit search.
pub const MAX_ORBIT_RADIUS: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharsetError {
    #[error("inconsistent system: the ideal contains the nonzero constant {0}")]
    Inconsistent(String),
    #[error("not quasi-linear: {0}")]
    NotQuasiLinear(String),
    #[error("orbit of leaders did not close within shift radius {0}")]
    OrbitNotClosed(i64),
    #[error("coherence completion did not terminate after {0} rounds")]
    NoTermination(usize),
    #[error("elements are not mutually reduced")]
    NotAutoreduced,
    #[error("ranking does not match the polynomial ring")]
    RankingMismatch,
}

/// `(leader, degree)`, `None` for ground elements.
pub fn rank_of(rk: &Ranking, p: &SigmaPolynomial) -> Option<(Term, u32)> {
    let u = p.leader(rk)?;
    let d = p.degree_in(&u);
    Some((u, d))
}

/// Ground elements rank lowest; otherwise leader, then degree.
pub fn compare_rank(rk: &Ranking, a: &SigmaPolynomial, b: &SigmaPolynomial) -> Ordering {
    match (rank_of(rk, a), rank_of(rk, b)) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some((u, d)), Some((v, e))) => rk.compare(&u, &v).then(d.cmp(&e)),
    }
}

/// Whether `a` has no power of a transform of `u_b` of degree `≥ d_b`.
pub fn is_reduced(rk: &Ranking, a: &SigmaPolynomial, b: &SigmaPolynomial) -> bool {
    let Some((u, d)) = rank_of(rk, b) else { return a.is_zero() };
    a.monomials().all(|(pp, _)| pp.factors().iter().all(|(w, e)| *e < d || is_transform(&u, w) == Transform::No))
}

/// Result of reducing `D` modulo a finite family.
///
/// The witness satisfies `multiplier·D − remainder = Σ c_k·γ_k·A_{i_k}` over
/// `combination`, and `multiplier` is the product of the shifted initials
/// listed in `initial_factors`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SigmaPolynomial,
    pub multiplier: SigmaPolynomial,
    pub initial_factors: Vec<(Shift, usize)>,
    pub combination: Vec<(SigmaPolynomial, Shift, usize)>,
}

impl Reduction {
    /// Recomputes both sides of the witness identity.
    pub fn check(&self, original: &SigmaPolynomial, basis: &[SigmaPolynomial]) -> bool {
        let lhs = self.multiplier.mul(original).sub(&self.remainder);
        let rhs = self.combination.iter().fold(SigmaPolynomial::zero(original.m(), original.n()), |acc, (c, g, i)| {
            acc.add(&c.mul(&basis[*i].apply_shift(g)))
        });
        lhs == rhs
    }
}

/// Highest term of `d` that is a transform of some basis leader with enough
/// degree, with the index of the first such basis element.
fn reducible_term(rk: &Ranking, d: &SigmaPolynomial, ranks: &[(Term, u32)]) -> Option<(Term, usize)> {
    let mut terms: Vec<Term> = d.terms().into_iter().collect();
    terms.sort_by(|a, b| rk.compare(b, a));
    for w in terms {
        let e = d.degree_in(&w);
        for (i, (u, du)) in ranks.iter().enumerate() {
            if e >= *du && is_transform(u, &w) != Transform::No {
                return Some((w, i));
            }
        }
    }
    None
}

/// Pseudo-division of `d` by the family `basis`, which must consist of
/// non-ground elements.
pub fn reduce_by(rk: &Ranking, d: &SigmaPolynomial, basis: &[SigmaPolynomial]) -> Reduction {
    let (m, n) = (d.m(), d.n());
    let ranks: Vec<(Term, u32)> = basis.iter().map(|b| rank_of(rk, b).expect("ground basis element")).collect();
    let mut rem = d.clone();
    let mut multiplier = SigmaPolynomial::constant(m, n, ConstantExpr::one());
    let mut initial_factors = Vec::new();
    let mut combination: Vec<(SigmaPolynomial, Shift, usize)> = Vec::new();
    while let Some((w, i)) = reducible_term(rk, &rem, &ranks) {
        let (u, du) = &ranks[i];
        let gamma = w.shift.difference(&u.shift);
        let gb = basis[i].apply_shift(&gamma);
        debug_assert_eq!(gb.leader(rk).as_ref(), Some(&w));
        let init = gb.coefficient_of(&w, *du);
        let e = rem.degree_in(&w);
        let h = rem.coefficient_of(&w, e).mul_term_power(&w, e - du);
        match init.ground_value() {
            Some(c) => {
                let q = h.scale(&c.recip().expect("initial is nonzero"));
                rem = rem.sub(&q.mul(&gb));
                combination.push((q, gamma, i));
            }
            None => {
                rem = init.mul(&rem).sub(&h.mul(&gb));
                multiplier = init.mul(&multiplier);
                for (c, _, _) in &mut combination {
                    *c = init.mul(c);
                }
                combination.push((h, gamma.clone(), i));
                initial_factors.push((gamma, i));
            }
        }
    }
    Reduction { remainder: rem, multiplier, initial_factors, combination }
}

fn sort_by_rank(rk: &Ranking, v: &mut [SigmaPolynomial]) {
    v.sort_by(|a, b| compare_rank(rk, a, b));
}

/// Finite set of mutually reduced non-ground σ*-polynomials, sorted by
/// increasing rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoreducedSet {
    elements: Vec<SigmaPolynomial>,
    ranking: Ranking,
}

impl AutoreducedSet {
    pub fn new(mut elements: Vec<SigmaPolynomial>, rk: &Ranking) -> Result<Self, CharsetError> {
        for e in &elements {
            if e.m() != rk.m() || e.n() != rk.n() {
                return Err(CharsetError::RankingMismatch);
            }
            if e.is_ground() {
                return Err(CharsetError::NotAutoreduced);
            }
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                if i != j && !is_reduced(rk, a, b) {
                    return Err(CharsetError::NotAutoreduced);
                }
            }
        }
        sort_by_rank(rk, &mut elements);
        Ok(AutoreducedSet { elements, ranking: rk.clone() })
    }

    pub fn elements(&self) -> &[SigmaPolynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<SigmaPolynomial> {
        self.elements
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leaders(&self) -> Vec<Term> {
        self.elements.iter().map(|e| e.leader(&self.ranking).expect("non-ground")).collect()
    }

    pub fn reduce(&self, d: &SigmaPolynomial) -> Reduction {
        reduce_by(&self.ranking, d, &self.elements)
    }
}

fn ground_error(p: &SigmaPolynomial) -> CharsetError {
    CharsetError::Inconsistent(p.ground_value().unwrap_or_default().to_string())
}

/// Repeatedly replaces the first element not reduced with respect to a
/// lower one by its remainder.
pub fn autoreduce(list: &[SigmaPolynomial], rk: &Ranking) -> Result<AutoreducedSet, CharsetError> {
    let mut elems = Vec::new();
    for p in list {
        if p.m() != rk.m() || p.n() != rk.n() {
            return Err(CharsetError::RankingMismatch);
        }
        if p.is_zero() {
            continue;
        }
        if p.is_ground() {
            return Err(ground_error(p));
        }
        elems.push(p.clone());
    }
    loop {
        sort_by_rank(rk, &mut elems);
        let hit = (0..elems.len())
            .find_map(|i| (i + 1..elems.len()).find(|&j| !is_reduced(rk, &elems[j], &elems[i])).map(|j| (i, j)));
        let Some((i, j)) = hit else { break };
        let r = reduce_by(rk, &elems[j], std::slice::from_ref(&elems[i])).remainder;
        elems.remove(j);
        if r.is_zero() {
            continue;
        }
        if r.is_ground() {
            return Err(ground_error(&r));
        }
        elems.push(r);
    }
    AutoreducedSet::new(elems, rk)
}

/// Minimal common transforms of two terms of the same indeterminate, one per
/// orthant containing both.
pub fn least_common_transforms(u: &Term, v: &Term) -> Vec<Term> {
    if u.ind != v.ind {
        return Vec::new();
    }
    let (a, b) = (u.shift.exponents(), v.shift.exponents());
    let m = a.len();
    let mut out: Vec<Term> = Vec::new();
    for signs in 0u32..(1 << m) {
        let compatible = (0..m).all(|k| {
            let s = if signs >> k & 1 == 1 { -1 } else { 1 };
            a[k] * s >= 0 && b[k] * s >= 0
        });
        if !compatible {
            continue;
        }
        let w: Vec<i64> = (0..m)
            .map(|k| {
                let s = if signs >> k & 1 == 1 { -1 } else { 1 };
                s * a[k].abs().max(b[k].abs())
            })
            .collect();
        let t = Term::new(Shift::new(w), u.ind);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// `I(γ₂B)·w^{d_B−d_A}·γ₁A − I(γ₁A)·w^{d_A−d_B}·γ₂B` at the common transform `w`.
pub fn s_polynomial(rk: &Ranking, a: &SigmaPolynomial, b: &SigmaPolynomial, w: &Term) -> SigmaPolynomial {
    let (ua, da) = rank_of(rk, a).expect("non-ground");
    let (ub, db) = rank_of(rk, b).expect("non-ground");
    let ga = a.apply_shift(&w.shift.difference(&ua.shift));
    let gb = b.apply_shift(&w.shift.difference(&ub.shift));
    let ia = ga.coefficient_of(w, da);
    let ib = gb.coefficient_of(w, db);
    let top = da.max(db);
    ib.mul(&ga.mul_term_power(w, top - da)).sub(&ia.mul(&gb.mul_term_power(w, top - db)))
}

/// All shifts with every exponent in `[-r, r]`, by increasing order then
/// lexicographically.
pub fn shift_box(m: usize, r: i64) -> Vec<Shift> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    let mut shifts: Vec<Shift> = out.into_iter().map(Shift::new).collect();
    shifts.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    shifts
}

/// Largest coordinate extent of the terms of a polynomial.
fn spread(p: &SigmaPolynomial) -> i64 {
    let terms = p.terms();
    (0..p.m())
        .map(|k| {
            let ks = terms.iter().map(|t| t.shift.exponents()[k]);
            ks.clone().max().unwrap_or(0) - ks.min().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

fn nonzero_remainders(set: &AutoreducedSet) -> Vec<SigmaPolynomial> {
    let rk = set.ranking();
    let els = set.elements();
    let radius = els.iter().map(spread).max().unwrap_or(0) + 2;
    let m = rk.m();
    let mut out = Vec::new();
    for b in els {
        for g in shift_box(m, radius) {
            if g.is_identity() {
                continue;
            }
            let r = set.reduce(&b.apply_shift(&g)).remainder;
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    let leaders = set.leaders();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            for w in least_common_transforms(&leaders[i], &leaders[j]) {
                let r = set.reduce(&s_polynomial(rk, &els[i], &els[j], &w)).remainder;
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Whether every sampled shift and every S-polynomial of the set reduces to
/// zero.
pub fn is_coherent(set: &AutoreducedSet) -> bool {
    nonzero_remainders(set).is_empty()
}

/// Adds the lowest-ranked nonzero remainder and re-autoreduces until the set
/// is coherent.
pub fn coherence_complete(set: &AutoreducedSet) -> Result<AutoreducedSet, CharsetError> {
    let rk = set.ranking().clone();
    let mut current = set.clone();
    for _ in 0..MAX_COMPLETION_ROUNDS {
        let rems = nonzero_remainders(&current);
        let Some(lowest) = rems.into_iter().min_by(|a, b| compare_rank(&rk, a, b)) else {
            return Ok(current);
        };
        if lowest.is_ground() {
            return Err(ground_error(&lowest));
        }
        let mut els = current.into_elements();
        els.push(lowest);
        current = autoreduce(&els, &rk)?;
    }
    Err(CharsetError::NoTermination(MAX_COMPLETION_ROUNDS))
}

/// Characteristic set of the ideal generated by one quasi-linear polynomial:
/// the shifts of `a` whose leaders are minimal among all shifted leaders.
pub fn charset_quasilinear(a: &SigmaPolynomial, rk: &Ranking) -> Result<AutoreducedSet, CharsetError> {
    if a.m() != rk.m() || a.n() != rk.n() {
        return Err(CharsetError::RankingMismatch);
    }
    if !a.is_quasi_linear(rk) {
        return Err(CharsetError::NotQuasiLinear(a.to_string()));
    }
    let m = rk.m();
    let mut radius = spread(a).max(1);
    while radius <= MAX_ORBIT_RADIUS {
        // Leader -> first shift producing it, in box order.
        let mut leaders: BTreeMap<Term, Shift> = BTreeMap::new();
        for g in shift_box(m, radius) {
            let u = a.apply_shift(&g).leader(rk).expect("non-ground");
            leaders.entry(u).or_insert(g);
        }
        let minimal: Vec<(&Term, &Shift)> =
            leaders.iter().filter(|(u, _)| !leaders.keys().any(|v| is_transform(v, u) == Transform::Proper)).collect();
        let closed = shift_box(m, radius + 1).into_iter().all(|g| {
            let u = a.apply_shift(&g).leader(rk).expect("non-ground");
            minimal.iter().any(|(v, _)| is_transform(v, &u) != Transform::No)
        });
        if closed {
            let elements = minimal.iter().map(|(_, g)| a.apply_shift(g)).collect();
            return AutoreducedSet::new(elements, rk);
        }
        radius += 1;
    }
    Err(CharsetError::OrbitNotClosed(MAX_ORBIT_RADIUS))
}

/// Compares autoreduced sets: the first differing element decides; a proper
/// extension ranks lower than its prefix.
pub fn set_rank_compare(a: &AutoreducedSet, b: &AutoreducedSet) -> Ordering {
    let rk = a.ranking();
    for (x, y) in a.elements().iter().zip(b.elements()) {
        match compare_rank(rk, x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

/// Whether `p` and `q` agree up to a nonzero constant factor.
pub fn proportional(p: &SigmaPolynomial, q: &SigmaPolynomial) -> bool {
    let Some((pp, c)) = p.monomials().next() else { return q.is_zero() };
    let Some(d) = q.monomials().find(|(qq, _)| *qq == pp).map(|(_, d)| d.clone()) else { return false };
    let ratio = d.div(c).expect("nonzero coefficient");
    p.scale(&ratio) == *q
}
