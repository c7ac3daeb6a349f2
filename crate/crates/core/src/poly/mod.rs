//! Sparse multivariate polynomials over a field, plus the matrix and Gröbner
//! machinery built on them.

pub mod gcd;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rng;
pub mod univariate;

pub use gcd::{gcd, squarefree_part};
pub use groebner::{groebner, quotient_dimension, Budget, GroebnerBasis, Ideal, DEFAULT_PAIR_BUDGET};
pub use matrix::{determinant, determinant_bareiss, determinant_cofactor, hessian, jacobian, principal_submatrix, scalar_rank, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use polynomial::Polynomial;
pub use rng::SplitMix64;

use crate::field::Field;

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// descending lexicographic order of the exponent vector.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left as u16);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(i + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, nvars, deg, &mut Vec::new(), &mut out);
    out
}

/// Random homogeneous polynomial of degree `deg`: one coefficient per
/// monomial, drawn in the order of [`monomials_of_degree`]. A zero result is
/// redrawn.
pub fn random_homogeneous<K: Field>(field: &K, nvars: usize, deg: u32, rng: &mut SplitMix64) -> Polynomial<K> {
    let monos = monomials_of_degree(nvars, deg);
    loop {
        let terms: Vec<(Monomial, K::Elem)> = monos.iter().map(|m| (m.clone(), field.sample(rng))).collect();
        let p = Polynomial::from_terms(field, nvars, terms);
        if !p.is_zero() || monos.is_empty() {
            return p;
        }
    }
}

/// Degree of `p` if it is homogeneous (with optional weights), else `None`.
/// The zero polynomial counts as homogeneous of degree 0.
pub fn is_homogeneous<K: Field>(p: &Polynomial<K>, weights: Option<&[i64]>) -> Option<i64> {
    p.is_homogeneous(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
        assert_eq!(monomials_of_degree(10, 4).len(), 715);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn random_homogeneous_is_deterministic() {
        let f = PrimeField::new(32003).unwrap();
        let a = random_homogeneous(&f, 4, 3, &mut SplitMix64::new(7));
        let b = random_homogeneous(&f, 4, 3, &mut SplitMix64::new(7));
        assert_eq!(a, b);
        assert_eq!(a.is_homogeneous(None), Some(3));
    }
}
