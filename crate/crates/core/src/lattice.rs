//! Dimension polynomials of finite subsets of `N^m` and `Z^m`.
//!
//! `omega` counts points of `N^m` not dominated (product order) by a finite
//! set via inclusion-exclusion over subsets of its minimal elements. `phi`
//! handles `Z^m` by folding each orthant into `N^{2m}` and calling `omega`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::numpoly::NumericalPolynomial;

/// Largest antichain accepted by the inclusion-exclusion sum (2^q terms).
pub const MAX_ANTICHAIN: usize = 25;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative coordinate in a point of N^{m}")]
    NegativeCoordinate { m: usize },
    #[error("{q} minimal points exceed the inclusion-exclusion limit of {MAX_ANTICHAIN}")]
    TooManyPoints { q: usize },
    #[error("wrong ambient: expected {0:?}")]
    WrongAmbient(Ambient),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Naturals,
    Integers,
}

/// A finite set of lattice points sharing one ambient and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSet {
    ambient: Ambient,
    dim: usize,
    points: BTreeSet<Vec<i64>>,
}

impl LatticeSet {
    pub fn new<I, P>(ambient: Ambient, dim: usize, points: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<i64>>,
    {
        let mut set = BTreeSet::new();
        for p in points {
            let p = p.into();
            if p.len() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, got: p.len() });
            }
            if ambient == Ambient::Naturals && p.iter().any(|&c| c < 0) {
                return Err(LatticeError::NegativeCoordinate { m: dim });
            }
            set.insert(p);
        }
        Ok(Self { ambient, dim, points: set })
    }

    pub fn naturals<P: Into<Vec<i64>>>(dim: usize, points: impl IntoIterator<Item = P>) -> Result<Self, LatticeError> {
        Self::new(Ambient::Naturals, dim, points)
    }

    pub fn integers<P: Into<Vec<i64>>>(dim: usize, points: impl IntoIterator<Item = P>) -> Result<Self, LatticeError> {
        Self::new(Ambient::Integers, dim, points)
    }

    pub fn empty(ambient: Ambient, dim: usize) -> Self {
        Self { ambient, dim, points: BTreeSet::new() }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.points.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    /// Whether `a` lies below `b` in the order of this ambient.
    pub fn dominates(&self, a: &[i64], b: &[i64]) -> bool {
        match self.ambient {
            Ambient::Naturals => product_le(a, b),
            Ambient::Integers => orthant_le(a, b),
        }
    }

    /// Whether no point of the set lies below `v`.
    pub fn is_free(&self, v: &[i64]) -> bool {
        !self.points.iter().any(|a| self.dominates(a, v))
    }

    /// Sum of coordinates (N) or of absolute coordinates (Z) over all points.
    pub fn total_order(&self) -> i64 {
        self.points.iter().flatten().map(|c| c.abs()).sum()
    }
}

fn check_dims(a: &[i64], b: &[i64]) -> Result<(), LatticeError> {
    if a.len() != b.len() {
        return Err(LatticeError::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(())
}

fn product_le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn orthant_le(a: &[i64], w: &[i64]) -> bool {
    a.iter().zip(w).all(|(&x, &y)| x == 0 || (x > 0 && y >= x) || (x < 0 && y <= x))
}

/// Componentwise order on `N^m`.
pub fn leq_product(a: &[i64], b: &[i64]) -> Result<bool, LatticeError> {
    check_dims(a, b)?;
    Ok(product_le(a, b))
}

/// `a <= w` in `Z^m`: both lie in a common orthant and `|a| <= |w|`
/// componentwise. Zero coordinates are compatible with either sign.
pub fn leq_orthant(a: &[i64], w: &[i64]) -> Result<bool, LatticeError> {
    check_dims(a, w)?;
    Ok(orthant_le(a, w))
}

/// The antichain of points not strictly above another point of the set.
pub fn minimal_elements(set: &LatticeSet) -> LatticeSet {
    let points =
        set.points.iter().filter(|p| !set.points.iter().any(|q| q != *p && set.dominates(q, p))).cloned().collect();
    LatticeSet { points, ..set.clone() }
}

/// Order-preserving fold of `Z^m` into `N^{2m}`: positive parts, then negative parts.
pub fn rho(a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| x.max(0)).chain(a.iter().map(|&x| (-x).max(0))).collect()
}

/// Dimension polynomial of a finite subset of `N^m`.
pub fn omega(set: &LatticeSet) -> Result<NumericalPolynomial, LatticeError> {
    if set.ambient != Ambient::Naturals {
        return Err(LatticeError::WrongAmbient(Ambient::Naturals));
    }
    let min = minimal_elements(set);
    let pts: Vec<&Vec<i64>> = min.points.iter().collect();
    if pts.len() > MAX_ANTICHAIN {
        return Err(LatticeError::TooManyPoints { q: pts.len() });
    }
    let m = set.dim;
    // Signed multiplicity of each b_theta over all subsets theta.
    let mut weights: BTreeMap<i64, i64> = BTreeMap::new();
    fn walk(pts: &[&Vec<i64>], start: usize, maxes: &mut Vec<i64>, size: usize, weights: &mut BTreeMap<i64, i64>) {
        let b: i64 = maxes.iter().sum();
        *weights.entry(b).or_default() += if size.is_multiple_of(2) { 1 } else { -1 };
        for i in start..pts.len() {
            let saved = maxes.clone();
            for (mx, &c) in maxes.iter_mut().zip(pts[i].iter()) {
                *mx = (*mx).max(c);
            }
            walk(pts, i + 1, maxes, size + 1, weights);
            *maxes = saved;
        }
    }
    walk(&pts, 0, &mut vec![0; m], 0, &mut weights);
    Ok(weights
        .into_iter()
        .filter(|&(_, w)| w != 0)
        .map(|(b, w)| NumericalPolynomial::shifted_binomial(m, b).scale(&BigRational::from_integer(BigInt::from(w))))
        .sum())
}

/// Dimension polynomial of a finite subset of `Z^m`.
pub fn phi(set: &LatticeSet) -> Result<NumericalPolynomial, LatticeError> {
    if set.ambient != Ambient::Integers {
        return Err(LatticeError::WrongAmbient(Ambient::Integers));
    }
    let m = set.dim;
    let min = minimal_elements(set);
    let diagonals = (0..m).map(|i| {
        let mut e = vec![0; 2 * m];
        e[i] = 1;
        e[m + i] = 1;
        e
    });
    let folded = LatticeSet::naturals(2 * m, min.points().map(rho).chain(diagonals))?;
    omega(&folded)
}

/// Closed form of `phi` for the empty set: `sum (-1)^(m-i) 2^i C(m,i) C(t+i,i)`.
pub fn phi_empty(m: usize) -> NumericalPolynomial {
    let mut choose = BigInt::from(1);
    let mut total = NumericalPolynomial::zero();
    for i in 0..=m {
        if i > 0 {
            choose = choose * BigInt::from(m - i + 1) / BigInt::from(i);
        }
        let sign = if (m - i).is_multiple_of(2) { 1 } else { -1 };
        let coeff = BigInt::from(sign) * (BigInt::from(1) << i) * &choose;
        total = &total + &NumericalPolynomial::shifted_binomial(i, 0).scale(&BigRational::from_integer(coeff));
    }
    total
}
