//! Dense univariate polynomials (coefficients low to high), used for
//! squarefreeness certificates and for root finding over prime fields.

use super::rng::SplitMix64;
use crate::field::{Field, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<K: Field> {
    pub field: K,
    pub coeffs: Vec<K::Elem>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(field: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &K) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn x(field: &K) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
                let b = o.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
                f.add(&a, &b)
            })
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| f.mul(a, &f.from_i64(i as i64))).collect();
        Self::new(f, c)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `true` if squarefree (valid when the degree is below the characteristic
    /// or the characteristic is zero).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let f = &self.field;
        let mut base = self.rem(m);
        let mut acc = Self::new(f, vec![f.one()]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Distinct roots in F_p, sorted ascending (Cantor–Zassenhaus splitting of
/// `gcd(u, x^p − x)` with a fixed-seed generator, so results are deterministic).
pub fn roots_fp(u: &UniPoly<PrimeField>) -> Vec<u64> {
    let f = &u.field;
    if u.is_zero() {
        return Vec::new();
    }
    let u = u.monic();
    if u.degree() == Some(0) {
        return Vec::new();
    }
    let x = UniPoly::x(f);
    let xp = x.powmod(f.modulus(), &u);
    let g = u.gcd(&xp.sub(&x));
    let mut rng = SplitMix64::new(0x5eed_0f_7007);
    let mut out = Vec::new();
    split_linear(&g, &mut rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(g: &UniPoly<PrimeField>, rng: &mut SplitMix64, out: &mut Vec<u64>) {
    let f = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(f.neg(&g.coeffs[0]));
        }
        Some(d) => {
            if f.modulus() == 2 {
                for r in 0..2u64 {
                    if f.is_zero(&g.eval(&r)) {
                        out.push(r);
                    }
                }
                return;
            }
            loop {
                let a = rng.next_u64() % f.modulus();
                let shifted = UniPoly::new(&f, vec![a, 1]);
                let h = shifted.powmod((f.modulus() - 1) / 2, g);
                let h = h.sub(&UniPoly::new(&f, vec![1]));
                let c = g.gcd(&h);
                if let Some(cd) = c.degree() {
                    if cd > 0 && cd < d {
                        let (q, _) = g.divrem(&c);
                        split_linear(&c, rng, out);
                        split_linear(&q, rng, out);
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_product_of_linears() {
        let f = PrimeField::new(10007).unwrap();
        let mut u = UniPoly::new(&f, vec![1]);
        for r in [3u64, 77, 10000] {
            u = u.mul(&UniPoly::new(&f, vec![f.neg(&r), 1]));
        }
        // an irreducible quadratic factor x^2 + 1 (10007 = 3 mod 4)
        u = u.mul(&UniPoly::new(&f, vec![1, 0, 1]));
        assert_eq!(roots_fp(&u), vec![3, 77, 10000]);
    }

    #[test]
    fn squarefree_check() {
        let f = PrimeField::new(101).unwrap();
        let a = UniPoly::new(&f, vec![1, 1]);
        let b = UniPoly::new(&f, vec![2, 0, 1]);
        assert!(a.mul(&b).is_squarefree());
        assert!(!a.mul(&a).mul(&b).is_squarefree());
    }

    #[test]
    fn divrem_identity() {
        let f = PrimeField::new(97).unwrap();
        let a = UniPoly::new(&f, vec![5, 0, 3, 1, 9]);
        let d = UniPoly::new(&f, vec![2, 1, 1]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
