//! Finite-difference discretization and the catalog of reaction-diffusion
//! and chromatography models.
//!
//! Space is the first translation `a1`, time the second `a2`; grid steps are
//! 1 throughout.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::constant::ConstantExpr;
use crate::diffpoly::{ConstantDecl, DifferenceSystem, Names, Ranking, Shift, SigmaPolynomial, SystemError, Term};
use crate::numpoly::NumericalPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    Forward,
    Symmetric,
    CrankNicholson,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [SchemeKind::Forward, SchemeKind::Symmetric, SchemeKind::CrankNicholson];
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Forward => "forward",
            SchemeKind::Symmetric => "symmetric",
            SchemeKind::CrankNicholson => "crank-nicholson",
        })
    }
}

impl FromStr for SchemeKind {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "forward" | "forw" | "f" => Ok(SchemeKind::Forward),
            "symmetric" | "symm" | "s" => Ok(SchemeKind::Symmetric),
            "crank-nicholson" | "crank-nicolson" | "cn" => Ok(SchemeKind::CrankNicholson),
            _ => Err(SchemeError::UnknownScheme(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("unknown scheme {0}")]
    UnknownScheme(String),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("{0} has no stored {1} form")]
    NoForm(String, SchemeKind),
    #[error("the Crank-Nicholson form is stored, not derived")]
    NotDerivable,
    #[error("unknown function index {0}")]
    UnknownFunction(usize),
    #[error("symbol {0} is not declared")]
    UndeclaredSymbol(String),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Differential operator applied to one unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deriv {
    Id,
    Dx,
    Dxx,
    Dt,
}

/// `coeff · Π (deriv u_j)^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeMonomial {
    pub coeff: ConstantExpr,
    pub factors: Vec<(usize, Deriv, u32)>,
}

pub fn pde_term(coeff: ConstantExpr, factors: &[(usize, Deriv, u32)]) -> PdeMonomial {
    PdeMonomial { coeff, factors: factors.to_vec() }
}

/// Polynomial PDE system in one space and one time variable; each equation
/// is a sum of monomials set equal to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDESpec {
    pub unknowns: Vec<String>,
    pub constants: Vec<ConstantDecl>,
    pub equations: Vec<Vec<PdeMonomial>>,
}

impl PDESpec {
    pub fn validate(&self) -> Result<(), SchemeError> {
        for mono in self.equations.iter().flatten() {
            for &(j, _, _) in &mono.factors {
                if j >= self.unknowns.len() {
                    return Err(SchemeError::UnknownFunction(j));
                }
            }
            for s in mono.coeff.symbols() {
                if !self.constants.iter().any(|c| c.name == s) {
                    return Err(SchemeError::UndeclaredSymbol(s));
                }
            }
        }
        Ok(())
    }
}

fn k(s: &str) -> ConstantExpr {
    s.parse().expect("catalog constant")
}

fn var(n: usize, e: [i64; 2], ind: usize, c: i64) -> SigmaPolynomial {
    SigmaPolynomial::shifted_var(n, &e, ind, ConstantExpr::integer(c))
}

/// The difference operator replacing `d` under `scheme`, applied to `y_j`.
fn operator(n: usize, j: usize, d: Deriv, scheme: SchemeKind) -> SigmaPolynomial {
    let parts: &[([i64; 2], i64)] = match (d, scheme) {
        (Deriv::Id, _) => &[([0, 0], 1)],
        (Deriv::Dx, SchemeKind::Forward) => &[([1, 0], 1), ([0, 0], -1)],
        (Deriv::Dxx, SchemeKind::Forward) => &[([2, 0], 1), ([1, 0], -2), ([0, 0], 1)],
        (Deriv::Dt, SchemeKind::Forward) => &[([0, 1], 1), ([0, 0], -1)],
        (Deriv::Dx, _) => &[([1, 0], 1), ([-1, 0], -1)],
        (Deriv::Dxx, _) => &[([1, 0], 1), ([-1, 0], 1), ([0, 0], -2)],
        (Deriv::Dt, _) => &[([0, 1], 1), ([0, -1], -1)],
    };
    parts.iter().fold(SigmaPolynomial::zero(2, n), |acc, &(e, c)| acc.add(&var(n, e, j, c)))
}

/// Replaces derivatives by forward or symmetric differences and expands.
pub fn discretize(pde: &PDESpec, scheme: SchemeKind) -> Result<DifferenceSystem, SchemeError> {
    if scheme == SchemeKind::CrankNicholson {
        return Err(SchemeError::NotDerivable);
    }
    pde.validate()?;
    let n = pde.unknowns.len();
    let polynomials = pde
        .equations
        .iter()
        .map(|eq| {
            eq.iter().fold(SigmaPolynomial::zero(2, n), |acc, mono| {
                let product =
                    mono.factors.iter().fold(SigmaPolynomial::constant(2, n, mono.coeff.clone()), |p, &(j, d, e)| {
                        p.mul(&operator(n, j, d, scheme).pow(e))
                    });
                acc.add(&product)
            })
        })
        .collect();
    Ok(DifferenceSystem::new(Names::default_for(2, n), pde.constants.clone(), polynomials)?)
}

/// One stored or derived discrete form with its expected strength.
#[derive(Clone, Debug)]
pub struct SchemeForm {
    pub scheme: SchemeKind,
    pub system: DifferenceSystem,
    pub ranking: Ranking,
    pub expected_psi: NumericalPolynomial,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub pde: PDESpec,
    /// Number of independent component blocks (chromatography `N`).
    pub components: usize,
    pub forms: Vec<SchemeForm>,
}

impl CatalogEntry {
    pub fn form(&self, scheme: SchemeKind) -> Result<&SchemeForm, SchemeError> {
        self.forms.iter().find(|f| f.scheme == scheme).ok_or_else(|| SchemeError::NoForm(self.name.clone(), scheme))
    }

    pub fn schemes(&self) -> Vec<SchemeKind> {
        self.forms.iter().map(|f| f.scheme).collect()
    }

    /// Expected strength of a single component block.
    pub fn expected_per_component(&self, scheme: SchemeKind) -> Result<NumericalPolynomial, SchemeError> {
        let total = &self.form(scheme)?.expected_psi;
        let n = num_rational::BigRational::from_integer((self.components as i64).into());
        Ok(total.scale(&n.recip()))
    }
}

pub const CATALOG_NAMES: [&str; 10] = [
    "diffusion",
    "murray",
    "burgers",
    "fisher",
    "huxley",
    "burgers-fisher",
    "burgers-huxley",
    "fitzhugh-nagumo",
    "reaction-kinetics",
    "chromatography",
];

fn poly(coeffs: &[i64]) -> NumericalPolynomial {
    NumericalPolynomial::from_ints(coeffs)
}

fn derived(
    name: &str,
    pde: PDESpec,
    components: usize,
    specs: &[(SchemeKind, Ranking, NumericalPolynomial)],
) -> CatalogEntry {
    let forms = specs
        .iter()
        .map(|(scheme, ranking, expected)| SchemeForm {
            scheme: *scheme,
            system: discretize(&pde, *scheme).expect("catalog PDE discretizes"),
            ranking: ranking.clone(),
            expected_psi: expected.clone(),
        })
        .collect();
    CatalogEntry { name: name.to_string(), pde, components, forms }
}

/// `α1α2y + c1·α1⁻¹α2y + c2·α1y + c3·α2y + c4·α1⁻¹y + c5`.
fn crank_nicholson_shape(n: usize, ind: usize) -> SigmaPolynomial {
    let c = |s: &str| k(s);
    [([1, 1], "1"), ([-1, 1], "c1"), ([1, 0], "c2"), ([0, 1], "c3"), ([-1, 0], "c4")]
        .iter()
        .fold(SigmaPolynomial::constant(2, n, c("c5")), |acc, (e, s)| {
            acc.add(&SigmaPolynomial::shifted_var(n, e, ind, c(s)))
        })
}

fn cn_constants() -> Vec<ConstantDecl> {
    (1..=5).map(|i| ConstantDecl::nonzero(&format!("c{i}"))).collect()
}

pub fn diffusion() -> CatalogEntry {
    use Deriv::*;
    let pde = PDESpec {
        unknowns: vec!["u".into()],
        constants: vec![ConstantDecl::nonzero("a")],
        equations: vec![vec![pde_term(k("a"), &[(0, Dxx, 1)]), pde_term(k("-1"), &[(0, Dt, 1)])]],
    };
    let rk = Ranking::standard(2, 1);
    let mut entry = derived(
        "diffusion",
        pde,
        1,
        &[(SchemeKind::Forward, rk.clone(), poly(&[0, 5])), (SchemeKind::Symmetric, rk.clone(), poly(&[0, 4]))],
    );
    let cn = DifferenceSystem::new(Names::default_for(2, 1), cn_constants(), vec![crank_nicholson_shape(1, 0)])
        .expect("valid");
    entry.forms.push(SchemeForm {
        scheme: SchemeKind::CrankNicholson,
        system: cn,
        ranking: rk,
        expected_psi: poly(&[-1, 6]),
    });
    entry
}

/// `u_xx + (a·u + b)·u_x + c·u_t + F(u)`, `F` given by ascending coefficients.
pub fn family_pde(a: &str, b: &str, c: &str, f: &[&str], constants: &[&str]) -> PDESpec {
    use Deriv::*;
    let mut eq = vec![
        pde_term(ConstantExpr::one(), &[(0, Dxx, 1)]),
        pde_term(k(a), &[(0, Id, 1), (0, Dx, 1)]),
        pde_term(k(b), &[(0, Dx, 1)]),
        pde_term(k(c), &[(0, Dt, 1)]),
    ];
    for (i, fi) in f.iter().enumerate() {
        let factors: Vec<_> = if i == 0 { vec![] } else { vec![(0, Id, i as u32)] };
        eq.push(pde_term(k(fi), &factors));
    }
    eq.retain(|m| !m.coeff.is_zero());
    PDESpec {
        unknowns: vec!["u".into()],
        constants: constants.iter().map(|s| ConstantDecl::nonzero(s)).collect(),
        equations: vec![eq],
    }
}

fn family_entry(name: &str, pde: PDESpec) -> CatalogEntry {
    derived(
        name,
        pde,
        1,
        &[
            (SchemeKind::Forward, Ranking::standard(2, 1), poly(&[0, 5])),
            (SchemeKind::Symmetric, Ranking::with_translation_priority(vec![1, 0], 1).unwrap(), poly(&[0, 4])),
        ],
    )
}

pub fn murray() -> CatalogEntry {
    family_entry("murray", family_pde("0", "0", "mu1", &["0", "mu2", "-mu3"], &["mu1", "mu2", "mu3"]))
}

pub fn burgers() -> CatalogEntry {
    family_entry("burgers", family_pde("-1", "0", "-1", &[], &[]))
}

pub fn fisher() -> CatalogEntry {
    family_entry("fisher", family_pde("0", "0", "-1", &["0", "1", "-1"], &[]))
}

pub fn huxley() -> CatalogEntry {
    family_entry("huxley", family_pde("0", "0", "-1", &["0", "k", "-(k + 1)", "1"], &["k"]))
}

pub fn burgers_fisher() -> CatalogEntry {
    family_entry("burgers-fisher", family_pde("1", "0", "-1", &["0", "1", "-1"], &[]))
}

pub fn burgers_huxley() -> CatalogEntry {
    family_entry("burgers-huxley", family_pde("1", "0", "-1", &["0", "-k", "k + 1", "-1"], &["k"]))
}

/// Family member with the time coefficient kept as a nonzero symbol `c`.
pub fn fitzhugh_nagumo() -> CatalogEntry {
    family_entry("fitzhugh-nagumo", family_pde("1", "0", "c", &["0", "a", "-(a + 1)", "1"], &["a", "c"]))
}

/// The equation exactly as written, without a time derivative.
pub fn fitzhugh_nagumo_literal() -> PDESpec {
    family_pde("1", "0", "0", &["0", "a", "-(a + 1)", "1"], &["a"])
}

pub fn reaction_kinetics() -> CatalogEntry {
    use Deriv::*;
    let heat = |j: usize| vec![pde_term(ConstantExpr::one(), &[(j, Dxx, 1)]), pde_term(k("-1"), &[(j, Dt, 1)])];
    let mut third = heat(2);
    third.extend([
        pde_term(k("-k1"), &[(2, Id, 2)]),
        pde_term(k("k1"), &[(2, Id, 1), (0, Id, 1)]),
        pde_term(k("k2"), &[(1, Id, 1)]),
        pde_term(k("-k2"), &[(2, Id, 1)]),
    ]);
    let pde = PDESpec {
        unknowns: vec!["v1".into(), "v2".into(), "u1".into()],
        constants: vec![ConstantDecl::nonzero("k1"), ConstantDecl::nonzero("k2")],
        equations: vec![heat(0), heat(1), third],
    };
    let rk = Ranking::standard(2, 3);
    let mut entry = derived(
        "reaction-kinetics",
        pde.clone(),
        1,
        &[(SchemeKind::Forward, rk.clone(), poly(&[0, 15])), (SchemeKind::Symmetric, rk.clone(), poly(&[0, 12]))],
    );
    let y = |e: [i64; 2], i: usize| SigmaPolynomial::term(2, 3, Term::new(Shift::new(e.to_vec()), i));
    let (y1, y2, y3) = (y([0, 0], 0), y([0, 0], 1), y([0, 0], 2));
    let reaction = y3
        .mul(&y3)
        .scale(&k("-k1"))
        .add(&y3.mul(&y1).scale(&k("k1")))
        .add(&y2.scale(&k("k2")))
        .sub(&y3.scale(&k("k2")));
    let polys =
        vec![crank_nicholson_shape(3, 0), crank_nicholson_shape(3, 1), crank_nicholson_shape(3, 2).add(&reaction)];
    let mut constants = cn_constants();
    constants.extend(pde.constants.iter().cloned());
    let cn = DifferenceSystem::new(Names::default_for(2, 3), constants, polys).expect("valid");
    entry.forms.push(SchemeForm {
        scheme: SchemeKind::CrankNicholson,
        system: cn,
        ranking: rk,
        expected_psi: poly(&[-3, 18]),
    });
    entry
}

/// The two uncoupled heat equations of the reaction-kinetics system, on
/// their own indeterminates.
pub fn reaction_kinetics_linear() -> CatalogEntry {
    use Deriv::*;
    let heat = |j: usize| vec![pde_term(ConstantExpr::one(), &[(j, Dxx, 1)]), pde_term(k("-1"), &[(j, Dt, 1)])];
    let pde =
        PDESpec { unknowns: vec!["v1".into(), "v2".into()], constants: Vec::new(), equations: vec![heat(0), heat(1)] };
    let rk = Ranking::standard(2, 2);
    let mut entry = derived(
        "reaction-kinetics-linear",
        pde,
        1,
        &[(SchemeKind::Forward, rk.clone(), poly(&[0, 10])), (SchemeKind::Symmetric, rk.clone(), poly(&[0, 8]))],
    );
    let cn = DifferenceSystem::new(
        Names::default_for(2, 2),
        cn_constants(),
        vec![crank_nicholson_shape(2, 0), crank_nicholson_shape(2, 1)],
    )
    .expect("valid");
    entry.forms.push(SchemeForm {
        scheme: SchemeKind::CrankNicholson,
        system: cn,
        ranking: rk,
        expected_psi: poly(&[-2, 12]),
    });
    entry
}

/// The `N`-component chromatography model; unknowns alternate `C_i`, `Cs_i`.
pub fn chromatography(components: usize) -> CatalogEntry {
    use Deriv::*;
    assert!(components >= 1, "at least one component");
    let mut unknowns = Vec::new();
    let mut constants = vec![ConstantDecl::nonzero("F"), ConstantDecl::nonzero("u")];
    let mut equations = Vec::new();
    for i in 1..=components {
        let (c, cs) = (2 * i - 2, 2 * i - 1);
        unknowns.push(format!("C{i}"));
        unknowns.push(format!("Cs{i}"));
        let d = format!("D{i}");
        constants.push(ConstantDecl::nonzero(&d));
        equations.push(vec![
            pde_term(k(&d), &[(c, Dxx, 1)]),
            pde_term(k("-1"), &[(c, Dt, 1)]),
            pde_term(k("-F"), &[(cs, Dt, 1)]),
            pde_term(k("-u"), &[(c, Dx, 1)]),
        ]);
    }
    let pde = PDESpec { unknowns, constants, equations };
    let rk = Ranking::standard(2, 2 * components);
    let n = num_rational::BigRational::from_integer((components as i64).into());
    derived(
        "chromatography",
        pde,
        components,
        &[
            (SchemeKind::Forward, rk.clone(), poly(&[1, 7, 2]).scale(&n)),
            (SchemeKind::Symmetric, rk, poly(&[1, 6, 2]).scale(&n)),
        ],
    )
}

/// Catalog entry by name; chromatography uses one component. The linear
/// part of the reaction system is available as `reaction-kinetics-linear`.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry, SchemeError> {
    Ok(match name {
        "diffusion" => diffusion(),
        "murray" => murray(),
        "burgers" => burgers(),
        "fisher" => fisher(),
        "huxley" => huxley(),
        "burgers-fisher" => burgers_fisher(),
        "burgers-huxley" => burgers_huxley(),
        "fitzhugh-nagumo" => fitzhugh_nagumo(),
        "reaction-kinetics" => reaction_kinetics(),
        "chromatography" => chromatography(1),
        "reaction-kinetics-linear" => reaction_kinetics_linear(),
        _ => return Err(SchemeError::UnknownEntry(name.to_string())),
    })
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_NAMES.iter().map(|n| catalog_lookup(n).expect("listed")).collect()
}
