use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector. Its length is the number of variables of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: SmallVec::from_slice(exps), deg }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.exps.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; panics on exponent overflow (which no caller can reach with
    /// degrees below 65535).
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial { exps, deg: self.deg + o.deg }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let exps = o.exps.iter().zip(&self.exps).map(|(&a, &b)| a - b).collect();
        Monomial { exps, deg: o.deg - self.deg }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> =
            self.exps.iter().zip(&o.exps).map(|(&a, &b)| a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }

    /// Remove variable `i` (its exponent is discarded).
    pub fn drop_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        let e = exps.remove(i);
        Monomial { exps, deg: self.deg - e as u32 }
    }

    /// Insert a new variable at position `i` with exponent `e`.
    pub fn insert_var(&self, i: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(i, e);
        Monomial { exps, deg: self.deg + e as u32 }
    }

    /// Reorder variables: new variable `j` is old variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let exps = perm.iter().map(|&i| self.exps[i]).collect();
        Monomial { exps, deg: self.deg }
    }

    pub fn grevlex_cmp(&self, o: &Monomial) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&o.exps[i]) {
                Ordering::Equal => continue,
                c => return c.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn lex_cmp(&self, o: &Monomial) -> Ordering {
        self.exps.cmp(&o.exps)
    }

    fn grevlex_range_cmp(&self, o: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da: u32 = self.exps[lo..hi].iter().map(|&e| e as u32).sum();
        let db: u32 = o.exps[lo..hi].iter().map(|&e| e as u32).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (lo..hi).rev() {
            match self.exps[i].cmp(&o.exps[i]) {
                Ordering::Equal => continue,
                c => return c.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp_by(&self, o: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GrevLex => self.grevlex_cmp(o),
            MonomialOrder::Lex => self.lex_cmp(o),
            MonomialOrder::Block(k) => {
                let k = k.min(self.exps.len());
                match self.grevlex_range_cmp(o, 0, k) {
                    Ordering::Equal => self.grevlex_range_cmp(o, k, self.exps.len()),
                    c => c,
                }
            }
        }
    }
}

/// Term orders. `Block(k)` compares the first `k` variables by grevlex and
/// breaks ties with grevlex on the rest, which eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z, degree first, then reverse lex on the last variable
        assert_eq!(m(&[1, 0, 0]).grevlex_cmp(&m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(m(&[0, 2, 0]).grevlex_cmp(&m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(m(&[0, 0, 3]).grevlex_cmp(&m(&[2, 0, 0])), Ordering::Greater);
        assert_eq!(m(&[0, 0, 0]).grevlex_cmp(&m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(m(&[1, 0, 0]).cmp_by(&m(&[0, 5, 5]), o), Ordering::Greater);
        assert_eq!(m(&[0, 2, 0]).cmp_by(&m(&[0, 1, 1]), o), Ordering::Greater);
    }

    #[test]
    fn lcm_and_division() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l, m(&[2, 3, 1]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(a.quotient_of(&l), m(&[0, 3, 0]));
        assert!(!a.coprime(&b));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 4, 2])));
    }
}
