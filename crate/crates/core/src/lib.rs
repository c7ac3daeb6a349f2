//! Exact polynomial arithmetic and intersection theory on projective-bundle
//! towers, used to study discriminants of quadric bundles.

pub mod error;
pub mod field;
pub mod chow;
pub mod poly;
pub mod quadbundle;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use poly::{Monomial, MonomialOrder, Polynomial};

/// Polynomials with rational coefficients.
pub type QPoly = Polynomial<Rationals>;
/// Polynomials over a prime field.
pub type FpPoly = Polynomial<PrimeField>;
