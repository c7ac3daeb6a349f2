//! Multivariate gcd and squarefree parts.
//!
//! The gcd goes through an ideal intersection: `(f) ∩ (g)` is principal,
//! generated by `lcm(f, g)`, and is read off an elimination basis of
//! `(t·f, (1−t)·g)`. Squarefree parts first try a cheap certificate (a
//! random line on which the restriction keeps full degree and is
//! squarefree), which settles the generic case without any gcd.

use super::groebner::{groebner, Budget, Ideal};
use super::monomial::MonomialOrder;
use super::rng::SplitMix64;
use super::univariate::UniPoly;
use super::Polynomial;
use crate::error::Result;
use crate::field::Field;

/// Monic gcd of two polynomials.
pub fn gcd<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>, budget: &Budget) -> Result<Polynomial<K>> {
    f.check_compatible(g)?;
    let field = f.field();
    let n = f.nvars();
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Polynomial::one(field, n));
    }
    if f.proportional(g) {
        return Ok(f.monic());
    }
    let t = Polynomial::var(field, n + 1, 0);
    let one = Polynomial::one(field, n + 1);
    let fe = f.insert_var(0);
    let ge = g.insert_var(0);
    let id = Ideal::new(vec![t.mul(&fe), one.sub(&t).mul(&ge)], MonomialOrder::Block(1));
    let gb = groebner(&id, budget)?;
    let lcm = gb
        .basis()
        .iter()
        .filter(|p| !p.uses_var(0))
        .min_by(|a, b| a.lead_by(MonomialOrder::Block(1)).unwrap().0.cmp_by(&b.lead_by(MonomialOrder::Block(1)).unwrap().0, MonomialOrder::Block(1)))
        .expect("intersection of principal ideals is nonzero")
        .specialize_drop(0, &field.zero());
    let prod = f.mul(g);
    Ok(prod.div_exact(&lcm)?.monic())
}

/// Restriction to the line `a + s·b`, as a dense univariate polynomial in `s`.
pub fn restrict_to_line<K: Field>(f: &Polynomial<K>, a: &[K::Elem], b: &[K::Elem]) -> UniPoly<K> {
    let field = f.field();
    let args: Vec<Polynomial<K>> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| {
            Polynomial::constant(field, 1, ai.clone()).add(&Polynomial::var(field, 1, 0).scale(bi))
        })
        .collect();
    let r = f.compose(&args, 1);
    let deg = r.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![field.zero(); deg + 1];
    for (m, c) in r.terms() {
        coeffs[m.exp(0) as usize] = c.clone();
    }
    UniPoly::new(field, coeffs)
}

/// Cheap certificate: `Some(true)` proves `f` squarefree; `None` means the
/// test was inconclusive.
pub fn squarefree_certificate<K: Field>(f: &Polynomial<K>, tries: usize) -> Option<bool> {
    let field = f.field();
    let deg = f.total_degree()? as u64;
    let ch = field.characteristic();
    if ch != 0 && deg >= ch {
        return None;
    }
    let mut rng = SplitMix64::new(0x0005_9f2e_e000_0001 ^ deg);
    for _ in 0..tries {
        let a: Vec<K::Elem> = (0..f.nvars()).map(|_| field.sample(&mut rng)).collect();
        let b: Vec<K::Elem> = (0..f.nvars()).map(|_| field.sample(&mut rng)).collect();
        let u = restrict_to_line(f, &a, &b);
        if u.degree() == Some(deg as usize) && u.is_squarefree() {
            return Some(true);
        }
    }
    None
}

/// Squarefree part, normalized to be monic. Assumes the characteristic is
/// zero or exceeds the degree (true for every use here).
pub fn squarefree_part<K: Field>(f: &Polynomial<K>, budget: &Budget) -> Result<Polynomial<K>> {
    if f.is_zero() || f.is_constant() {
        return Ok(f.monic());
    }
    if squarefree_certificate(f, 4) == Some(true) {
        return Ok(f.monic());
    }
    // gcd with the partial derivatives, one variable at a time
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.derivative(i);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d, budget)?;
        if g.is_constant() {
            break;
        }
    }
    Ok(f.div_exact(&g)?.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    #[test]
    fn gcd_of_products() {
        let f = PrimeField::new(10007).unwrap();
        let v = ["x", "y", "z"];
        let a = parse_poly("(x + y*z + 1)*(x^2 - z)", &v, &f).unwrap();
        let b = parse_poly("(x + y*z + 1)*(y - 3*z^2)", &v, &f).unwrap();
        let g = gcd(&a, &b, &Budget::default()).unwrap();
        assert_eq!(g, parse_poly("x + y*z + 1", &v, &f).unwrap().monic());
    }

    #[test]
    fn squarefree_removes_repeats() {
        let v = ["x", "y"];
        let f = parse_poly("(x + y)^2*(x - y)", &v, &Rationals).unwrap();
        let s = squarefree_part(&f, &Budget::default()).unwrap();
        assert_eq!(s, parse_poly("(x + y)*(x - y)", &v, &Rationals).unwrap().monic());
        // factors free of one variable survive
        let f = parse_poly("y^3*(x^2 + y)", &v, &Rationals).unwrap();
        let s = squarefree_part(&f, &Budget::default()).unwrap();
        assert_eq!(s, parse_poly("y*(x^2 + y)", &v, &Rationals).unwrap().monic());
    }

    #[test]
    fn certificate_on_generic_input() {
        let f = PrimeField::new(10007).unwrap();
        let v = ["x", "y", "z"];
        let p = parse_poly("x^3 + y^3 + z^3 + 5*x*y*z + 1", &v, &f).unwrap();
        assert_eq!(squarefree_certificate(&p, 4), Some(true));
        let sq = p.mul(&p);
        assert_eq!(squarefree_certificate(&sq, 4), None);
    }
}
