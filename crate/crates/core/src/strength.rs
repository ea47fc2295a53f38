//! From a difference system to its dimension polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::charset::{autoreduce, charset_quasilinear, coherence_complete, AutoreducedSet, CharsetError};
use crate::diffpoly::{DifferenceSystem, Ranking, SigmaPolynomial, SystemError};
use crate::lattice::{phi, LatticeError, LatticeSet};
use crate::numpoly::NumericalPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrengthError {
    #[error(transparent)]
    Charset(#[from] CharsetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("unsupported system class: {0}")]
    Unsupported(String),
    #[error("degree {degree} exceeds the number of translations {m}")]
    DegreeTooLarge { degree: usize, m: usize },
    #[error("leading coefficient {0} is not divisible by 2^m")]
    NotIntegral(String),
}

#[derive(Clone, Debug)]
pub struct StrengthReport {
    pub charset: AutoreducedSet,
    /// Leader exponents per indeterminate, possibly empty.
    pub leader_sets: Vec<LatticeSet>,
    pub per_indeterminate: Vec<NumericalPolynomial>,
    pub psi: NumericalPolynomial,
    pub sigma_tr_deg: BigInt,
}

/// The exponents of the leaders of `set`, grouped by indeterminate.
pub fn leader_exponent_sets(set: &AutoreducedSet, n: usize) -> Vec<LatticeSet> {
    let m = set.ranking().m();
    let mut points: Vec<Vec<Vec<i64>>> = vec![Vec::new(); n];
    for u in set.leaders() {
        points[u.ind].push(u.shift.exponents().to_vec());
    }
    points
        .into_iter()
        .map(|p| LatticeSet::integers(m, p).expect("leader exponents have the ring's dimension"))
        .collect()
}

/// Coefficient of `C(t+m, m)` divided by `2^m`, or 0 below degree `m`.
pub fn sigma_tr_deg(psi: &NumericalPolynomial, m: usize) -> Result<BigInt, StrengthError> {
    match psi.degree() {
        Some(d) if d > m => Err(StrengthError::DegreeTooLarge { degree: d, m }),
        Some(d) if d == m => {
            let a = &psi.binomial_basis()[m];
            let q = a / BigRational::from_integer(BigInt::one() << m);
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(StrengthError::NotIntegral(a.to_string()))
            }
        }
        _ => Ok(BigInt::zero()),
    }
}

fn leader_inds(set: &AutoreducedSet) -> BTreeSet<usize> {
    set.leaders().iter().map(|u| u.ind).collect()
}

/// Characteristic set of a system whose linear generators form one block and
/// whose remaining generators are each quasi-linear, with leaders on
/// pairwise disjoint indeterminates.
pub fn system_charset(polys: &[SigmaPolynomial], rk: &Ranking) -> Result<AutoreducedSet, StrengthError> {
    let (linear, nonlinear): (Vec<_>, Vec<_>) = polys.iter().cloned().partition(SigmaPolynomial::is_linear);
    let mut blocks: Vec<AutoreducedSet> = Vec::new();
    let linear_block = if linear.is_empty() { None } else { Some(coherence_complete(&autoreduce(&linear, rk)?)?) };
    for p in &nonlinear {
        if !p.is_quasi_linear(rk) {
            return Err(StrengthError::Unsupported(format!("{p} is neither linear nor quasi-linear")));
        }
        let mut cs = charset_quasilinear(p, rk)?;
        if let Some(lb) = &linear_block {
            let reduced: Vec<_> = cs.elements().iter().map(|e| lb.reduce(e).remainder).collect();
            if reduced.iter().any(SigmaPolynomial::is_ground) {
                return Err(StrengthError::Unsupported(
                    "a quasi-linear block collapses modulo the linear block".into(),
                ));
            }
            cs = AutoreducedSet::new(reduced, rk)
                .map_err(|_| StrengthError::Unsupported("reduced quasi-linear block is not autoreduced".into()))?;
        }
        blocks.push(cs);
    }
    blocks.extend(linear_block);
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if !leader_inds(a).is_disjoint(&leader_inds(b)) {
                return Err(StrengthError::Unsupported("blocks share leader indeterminates".into()));
            }
        }
    }
    let union: Vec<_> = blocks.into_iter().flat_map(AutoreducedSet::into_elements).collect();
    AutoreducedSet::new(union, rk).map_err(|_| StrengthError::Unsupported("blocks are not mutually reduced".into()))
}

pub fn strength_of_system(sys: &DifferenceSystem, rk: &Ranking) -> Result<StrengthReport, StrengthError> {
    sys.validate()?;
    if rk.m() != sys.m() || rk.n() != sys.n() {
        return Err(CharsetError::RankingMismatch.into());
    }
    let charset = system_charset(&sys.polynomials, rk)?;
    let leader_sets = leader_exponent_sets(&charset, sys.n());
    let per_indeterminate = leader_sets.iter().map(phi).collect::<Result<Vec<_>, _>>()?;
    let psi: NumericalPolynomial = per_indeterminate.iter().cloned().sum();
    let sigma_tr_deg = sigma_tr_deg(&psi, sys.m())?;
    Ok(StrengthReport { charset, leader_sets, per_indeterminate, psi, sigma_tr_deg })
}
