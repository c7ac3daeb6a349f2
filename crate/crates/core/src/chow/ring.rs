//! Chow rings of projective-bundle towers.
//!
//! Every generator has degree one. Generator `k` satisfies a monic relation
//! `x_k^{m_k} = tail_k` whose tail only involves `x_0..=x_k` with `x_k` to
//! powers below `m_k`. Those relations form a Gröbner basis for the
//! lexicographic order with later generators larger, so the normal form is
//! reached by eliminating generators from the last one down. Normal forms of
//! all relevant pure powers are tabulated once when the ring is built.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, Rationals};
use crate::poly::{Monomial, Polynomial};

pub type QPoly = Polynomial<Rationals>;

/// One generator of a tower ring.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// Exponent at which the relation kicks in.
    pub bound: u16,
    /// `x^bound` rewritten in lower terms.
    pub tail: QPoly,
    /// Value of the integral of `x^(bound-1)` over the fiber of this level.
    pub sign: i8,
}

#[derive(Debug)]
pub struct TowerRing {
    gens: Vec<Generator>,
    top: u32,
    /// `powers[k][e - bound_k]` is the normal form of `x_k^e`.
    powers: Vec<Vec<QPoly>>,
    /// Rings whose generators embed into this one, with their offsets.
    embeds: Vec<(Arc<TowerRing>, usize)>,
}

impl TowerRing {
    /// Build a ring from its generators. Tails must already be expressed in
    /// the full generator list (`gens.len()` variables).
    pub fn new(gens: Vec<Generator>) -> Self {
        let n = gens.len();
        let top: u32 = gens.iter().map(|g| g.bound as u32 - 1).sum();
        let mut ring = TowerRing { gens, top, powers: vec![Vec::new(); n], embeds: Vec::new() };
        for k in 0..n {
            let b = ring.gens[k].bound as u32;
            let first = ring.normal_form_below(&ring.gens[k].tail.clone(), k);
            ring.powers[k] = vec![first];
            let x = Polynomial::var(&Rationals, n, k);
            for _e in (b + 1)..=ring.top {
                let prev = ring.powers[k].last().unwrap().mul_truncated(&x, Some(ring.top));
                // only x_k^b can appear, and the table already covers it
                let next = ring.reduce_level(&prev, k);
                let next = ring.normal_form_below(&next, k);
                ring.powers[k].push(next);
            }
        }
        ring
    }

    /// Record that `sub` (and everything embedded in it) sits inside this
    /// ring starting at generator `offset`.
    pub fn register_embedding(&mut self, sub: &Arc<TowerRing>, offset: usize) {
        self.embeds.push((sub.clone(), offset));
        for (r, o) in &sub.embeds {
            self.embeds.push((r.clone(), o + offset));
        }
    }

    /// Offset at which `other`'s generators sit in this ring, if they do.
    pub fn offset_of(&self, other: &TowerRing) -> Option<usize> {
        if std::ptr::eq(self, other) {
            return Some(0);
        }
        self.embeds.iter().find(|(r, _)| std::ptr::eq(&**r, other)).map(|(_, o)| *o)
    }

    /// The ring of a point.
    pub fn point() -> Self {
        Self::new(Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// Degree of the top graded piece.
    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// Product of the generator signs: the integral of the top monomial.
    pub fn top_sign(&self) -> i64 {
        self.gens.iter().map(|g| g.sign as i64).product()
    }

    pub fn top_monomial(&self) -> Monomial {
        let e: Vec<u16> = self.gens.iter().map(|g| g.bound - 1).collect();
        Monomial::from_exps(&e)
    }

    pub fn zero(&self) -> QPoly {
        Polynomial::zero(&Rationals, self.nvars())
    }

    pub fn one(&self) -> QPoly {
        Polynomial::one(&Rationals, self.nvars())
    }

    pub fn constant(&self, c: BigRational) -> QPoly {
        Polynomial::constant(&Rationals, self.nvars(), c)
    }

    pub fn var(&self, k: usize) -> QPoly {
        Polynomial::var(&Rationals, self.nvars(), k)
    }

    /// Rewrite every power `x_k^e` with `e >= bound_k` via the table.
    fn reduce_level(&self, p: &QPoly, k: usize) -> QPoly {
        let b = self.gens[k].bound;
        if p.terms().iter().all(|(m, _)| m.exp(k) < b) {
            return p.clone();
        }
        let f = &Rationals;
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        let mut push = |m: Monomial, c: BigRational| {
            let entry = acc.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        };
        for (m, c) in p.terms() {
            let e = m.exp(k);
            if e < b {
                push(m.clone(), c.clone());
                continue;
            }
            let rest = m.with_exp(k, 0);
            let r = &self.powers[k][(e - b) as usize];
            for (rm, rc) in r.terms() {
                let prod = rest.mul(rm);
                if prod.degree() <= self.top {
                    push(prod, f.mul(c, rc));
                }
            }
        }
        let terms: Vec<(Monomial, BigRational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial::from_terms(f, self.nvars(), terms)
    }

    /// Reduce with respect to the generators `0..k`.
    fn normal_form_below(&self, p: &QPoly, k: usize) -> QPoly {
        let mut q = p.truncate(self.top);
        for j in (0..k).rev() {
            q = self.reduce_level(&q, j);
        }
        q
    }

    /// Canonical normal form. Components above the top degree vanish.
    pub fn normal_form(&self, p: &QPoly) -> QPoly {
        self.normal_form_below(p, self.nvars())
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.normal_form(&a.mul_truncated(b, Some(self.top)))
    }

    pub fn pow(&self, a: &QPoly, k: u32) -> QPoly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Integral over the whole tower: the coefficient of the top monomial
    /// in the normal form, times the product of the level signs.
    pub fn integrate_top(&self, p: &QPoly) -> BigRational {
        let nf = self.normal_form(&p.component(self.top));
        let c = nf.coeff(&self.top_monomial());
        c * BigRational::from_integer(self.top_sign().into())
    }

    /// Truncated exponential of a class without constant term.
    pub fn exp(&self, a: &QPoly) -> QPoly {
        let mut acc = self.one();
        let mut term = self.one();
        for k in 1..=self.top {
            term = self.mul(&term, a);
            if term.is_zero() {
                break;
            }
            let inv = BigRational::new(One::one(), factorial(k));
            acc = acc.add(&term.scale(&inv));
        }
        acc
    }

    /// Apply `ch_d -> s^d ch_d` (the Adams operation for `s > 0`, duality
    /// for `s = -1`).
    pub fn scale_degrees(&self, a: &QPoly, s: i64) -> QPoly {
        let mut out = self.zero();
        for d in 0..=self.top {
            let c = a.component(d);
            if !c.is_zero() {
                let f: BigRational = BigRational::from_integer(BigInt::from(s).pow(d));
                out = out.add(&c.scale(&f));
            }
        }
        out
    }

    /// Lift a class from a ring whose generators sit at positions
    /// `offset..` of this ring.
    pub fn lift(&self, p: &QPoly, offset: usize) -> QPoly {
        p.embed(self.nvars(), offset)
    }
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(n: u16) -> TowerRing {
        TowerRing::new(vec![Generator {
            name: "h".into(),
            bound: n + 1,
            tail: Polynomial::zero(&Rationals, 1),
            sign: 1,
        }])
    }

    #[test]
    fn projective_space_ring() {
        let r = pn(3);
        let h = r.var(0);
        assert_eq!(r.top_degree(), 3);
        assert!(r.pow(&h, 4).is_zero());
        assert_eq!(r.integrate_top(&r.pow(&h, 3)), BigRational::one());
    }

    #[test]
    fn exp_and_scaling() {
        let r = pn(2);
        let h = r.var(0);
        let e = r.exp(&h);
        let half = BigRational::new(1.into(), 2.into());
        let expect = r.one().add(&h).add(&r.pow(&h, 2).scale(&half));
        assert_eq!(e, expect);
        let d = r.scale_degrees(&e, -1);
        assert_eq!(d, r.exp(&h.neg()));
    }
}
