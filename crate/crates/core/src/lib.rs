//! Difference strength of systems of partial difference equations.
//!
//! Systems are written as σ*-polynomials: polynomials in the shifted values
//! `γ·y_i` of finitely many indeterminates, where `γ` ranges over the free
//! abelian group generated by the basic translations and their inverses.
//! The strength of a system is measured by its difference dimension
//! polynomial, computed from a characteristic set and checked against a
//! direct rank count on finite grids.

pub mod charset;
pub mod constant;
pub mod diffpoly;
pub mod lattice;
mod mpoly;
pub mod numpoly;
pub mod oracle;
pub mod schemes;
pub mod strength;

pub use constant::ConstantExpr;
pub use diffpoly::{ConstantDecl, DifferenceSystem, Names, PowerProduct, Ranking, Shift, SigmaPolynomial, Term};
pub use lattice::{Ambient, LatticeSet};
pub use num_rational::BigRational;
pub use numpoly::NumericalPolynomial;
pub use schemes::{catalog_lookup, CatalogEntry, SchemeKind};
pub use strength::{strength_of_system, StrengthReport};
