//! Brute-force checks: lattice point enumeration for ω/φ, and an exact rank
//! count of free grid values for linear systems.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffpoly::{DifferenceSystem, SigmaPolynomial};
use crate::lattice::{leq_orthant, leq_product, Ambient, LatticeError, LatticeSet};
use crate::numpoly::NumericalPolynomial;
use crate::schemes::{CatalogEntry, SchemeError, SchemeKind};

/// Largest number of lattice points the enumerators will visit.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;
/// How far beyond `r` the grid radius may grow before giving up.
pub const RADIUS_CAP: usize = 10;
const BINDING_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {0} points, over the budget of {ENUMERATION_BUDGET}")]
    Budget(u64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("grid oracle needs a linear system")]
    Nonlinear,
    #[error("coefficient {0} is not a number; bind the constants first")]
    Unbound(String),
    #[error("grid count did not stabilize for r = {r} up to radius {radius}")]
    NoStabilization { r: usize, radius: usize },
    #[error("no nondegenerate constant binding found in {0} attempts")]
    Degenerate(usize),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of points of order at most `r`.
pub fn points_up_to(ambient: Ambient, m: usize, r: usize) -> u64 {
    let (m, r) = (m as u64, r as u64);
    match ambient {
        Ambient::Naturals => binomial(r + m, m),
        Ambient::Integers => (0..=m.min(r)).map(|k| (1u64 << k) * binomial(m, k) * binomial(r, k)).sum(),
    }
}

/// Calls `f` on every point of the ambient with order at most `r`.
fn for_each_point(ambient: Ambient, m: usize, r: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(ambient: Ambient, left: usize, budget: i64, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if left == 0 {
            f(cur);
            return;
        }
        let lo = if ambient == Ambient::Naturals { 0 } else { -budget };
        for k in lo..=budget {
            cur.push(k);
            rec(ambient, left - 1, budget - k.abs(), cur, f);
            cur.pop();
        }
    }
    rec(ambient, m, r, &mut Vec::with_capacity(m), f);
}

/// Free-point counts for every order `0..=r_max`, cumulative.
pub fn free_counts(set: &LatticeSet, r_max: usize) -> Result<Vec<u64>, OracleError> {
    let need = points_up_to(set.ambient(), set.dim(), r_max);
    if need > ENUMERATION_BUDGET {
        return Err(OracleError::Budget(need));
    }
    let points: Vec<&[i64]> = set.points().collect();
    let below = |a: &[i64], v: &[i64]| match set.ambient() {
        Ambient::Naturals => leq_product(a, v).unwrap_or(false),
        Ambient::Integers => leq_orthant(a, v).unwrap_or(false),
    };
    let mut per_order = vec![0u64; r_max + 1];
    for_each_point(set.ambient(), set.dim(), r_max as i64, &mut |v| {
        if !points.iter().any(|a| below(a, v)) {
            let ord: i64 = v.iter().map(|c| c.abs()).sum();
            per_order[ord as usize] += 1;
        }
    });
    let mut acc = 0;
    Ok(per_order
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect())
}

/// Points of `N^m` of order at most `r` above no point of `e`.
pub fn count_v(e: &LatticeSet, r: usize) -> Result<u64, OracleError> {
    if e.ambient() != Ambient::Naturals {
        return Err(LatticeError::WrongAmbient(Ambient::Naturals).into());
    }
    Ok(free_counts(e, r)?[r])
}

/// Points of `Z^m` of order at most `r` not a transform of any point of `a`.
pub fn count_w(a: &LatticeSet, r: usize) -> Result<u64, OracleError> {
    if a.ambient() != Ambient::Integers {
        return Err(LatticeError::WrongAmbient(Ambient::Integers).into());
    }
    Ok(free_counts(a, r)?[r])
}

/// A linear system with numeric coefficients, a target order and a padding
/// radius.
#[derive(Clone, Debug)]
pub struct GridInstance {
    pub system: DifferenceSystem,
    pub r: usize,
    pub radius: usize,
}

/// Homogeneous part of each generator as `(exponents, ind, coefficient)`.
/// One linear relation as (shift, indeterminate, coefficient) entries.
type Row = Vec<(Vec<i64>, usize, BigRational)>;

fn numeric_rows(sys: &DifferenceSystem) -> Result<Vec<Row>, OracleError> {
    let mut out = Vec::new();
    for p in &sys.polynomials {
        if !p.is_linear() {
            return Err(OracleError::Nonlinear);
        }
        let mut row = Vec::new();
        for (pp, c) in p.monomials() {
            let q = c.as_rational().ok_or_else(|| OracleError::Unbound(c.to_string()))?;
            if let [(t, 1)] = pp.factors() {
                row.push((t.shift.exponents().to_vec(), t.ind, q));
            }
        }
        if !row.is_empty() {
            out.push(row);
        }
    }
    Ok(out)
}

fn max_term_order(sys: &DifferenceSystem) -> usize {
    sys.polynomials.iter().flat_map(SigmaPolynomial::terms).map(|t| t.order() as usize).max().unwrap_or(0)
}

fn order(v: &[i64]) -> usize {
    v.iter().map(|c| c.unsigned_abs() as usize).sum()
}

type SparseRow = BTreeMap<usize, BigRational>;

/// Incremental row echelon form; pivot rows are normalized to lead with 1.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((&c, v)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = v.clone();
                    for (k, pv) in p {
                        let e = row.entry(*k).or_insert_with(BigRational::zero);
                        *e -= &f * pv;
                        if e.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = v.recip();
                    for x in row.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }
}

/// `S_r` for every `r ≤ r_max` at one padding radius.
fn profile_at(rows: &[Row], n: usize, m: usize, r_max: usize, radius: usize) -> Vec<u64> {
    let mut nodes: Vec<Vec<i64>> = Vec::new();
    for_each_point(Ambient::Integers, m, radius as i64, &mut |v| nodes.push(v.to_vec()));
    nodes.sort_by(|a, b| order(b).cmp(&order(a)).then_with(|| a.cmp(b)));
    let mut column: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    let mut col_order = Vec::new();
    for v in &nodes {
        for i in 0..n {
            column.insert((v.clone(), i), col_order.len());
            col_order.push(order(v));
        }
    }
    let mut ech = Echelon::default();
    for gen in rows {
        let reach = gen.iter().map(|(e, _, _)| order(e)).max().unwrap_or(0);
        let mut shifts = Vec::new();
        for_each_point(Ambient::Integers, m, (radius + reach) as i64, &mut |g| shifts.push(g.to_vec()));
        for g in shifts {
            let mut row = SparseRow::new();
            let mut inside = true;
            for (e, i, c) in gen {
                let w: Vec<i64> = e.iter().zip(&g).map(|(a, b)| a + b).collect();
                match column.get(&(w, *i)) {
                    Some(&col) => {
                        row.insert(col, c.clone());
                    }
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                ech.insert(row);
            }
        }
    }
    (0..=r_max)
        .map(|r| {
            let d = ech.pivots.keys().filter(|&&c| col_order[c] <= r).count() as u64;
            n as u64 * points_up_to(Ambient::Integers, m, r) - d
        })
        .collect()
}

/// Free grid values `S_r` for `r = 0..=r_max`, growing the padding until two
/// consecutive radii agree.
pub fn grid_profile(sys: &DifferenceSystem, r_max: usize) -> Result<Vec<u64>, OracleError> {
    let rows = numeric_rows(sys)?;
    grid_profile_from(&rows, sys.n(), sys.m(), r_max, r_max + max_term_order(sys))
}

fn grid_profile_from(rows: &[Row], n: usize, m: usize, r_max: usize, start: usize) -> Result<Vec<u64>, OracleError> {
    let mut radius = start.max(r_max + 1);
    let mut prev = profile_at(rows, n, m, r_max, radius);
    while radius < r_max + RADIUS_CAP {
        radius += 1;
        let next = profile_at(rows, n, m, r_max, radius);
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
    Err(OracleError::NoStabilization { r: r_max, radius })
}

/// `S_r` of the instance.
pub fn grid_strength(g: &GridInstance) -> Result<u64, OracleError> {
    let rows = numeric_rows(&g.system)?;
    let start = g.radius.max(g.r + max_term_order(&g.system));
    Ok(grid_profile_from(&rows, g.system.n(), g.system.m(), g.r, start)?[g.r])
}

/// One comparison of `S_r` against `ψ(r)`.
#[derive(Clone, Debug)]
pub struct Check {
    pub trial: usize,
    pub r: usize,
    pub expected: BigRational,
    pub observed: u64,
    pub bindings: BTreeMap<String, BigRational>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == BigRational::from_integer(BigInt::from(self.observed))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }
}

/// Distinct nonzero small rationals for every constant of the system such
/// that no coefficient vanishes or becomes undefined.
pub fn random_bindings(
    sys: &DifferenceSystem,
    rng: &mut impl Rng,
) -> Result<BTreeMap<String, BigRational>, OracleError> {
    let names: Vec<String> = sys
        .polynomials
        .iter()
        .flat_map(SigmaPolynomial::symbols)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    for _ in 0..BINDING_ATTEMPTS {
        let mut values = BTreeMap::new();
        let mut used = Vec::new();
        for name in &names {
            let q = loop {
                let p: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let d: i64 = rng.gen_range(1..=5);
                let q = BigRational::new(p.into(), d.into());
                if !used.contains(&q) {
                    break q;
                }
            };
            used.push(q.clone());
            values.insert(name.clone(), q);
        }
        let ok = sys
            .polynomials
            .iter()
            .all(|p| p.monomials().all(|(_, c)| c.evaluate(&values).is_some_and(|v| !v.is_zero())));
        if ok {
            return Ok(values);
        }
    }
    Err(OracleError::Degenerate(BINDING_ATTEMPTS))
}

/// Compares `S_r` with `ψ(r)` for `r = 0..=r_max` over random bindings.
pub fn verify_system(
    sys: &DifferenceSystem,
    expected: &NumericalPolynomial,
    r_max: usize,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport, OracleError> {
    if !sys.is_linear() {
        return Err(OracleError::Nonlinear);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let bindings = random_bindings(sys, &mut rng)?;
        let bound = sys.bind(&bindings).ok_or(OracleError::Degenerate(1))?;
        let profile = grid_profile(&bound, r_max)?;
        for (r, &observed) in profile.iter().enumerate() {
            checks.push(Check {
                trial,
                r,
                expected: expected.evaluate(r as i64),
                observed,
                bindings: bindings.clone(),
            });
        }
    }
    Ok(VerifyReport { checks })
}

pub fn randomized_verify(
    entry: &CatalogEntry,
    scheme: SchemeKind,
    r_max: usize,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport, OracleError> {
    let form = entry.form(scheme)?;
    verify_system(&form.system, &form.expected_psi, r_max, trials, seed)
}
