//! Classes in a tower ring: Chow classes and virtual bundles.
//!
//! A bundle is stored as its rank and Chern character. Sums and sequences
//! add characters, duals flip odd degrees, tensor products multiply, and
//! the λ-operations come from the Newton recursions in the Adams operations.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{factorial, QPoly, TowerRing};
use crate::error::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// An element of a scene's Chow ring, kept in normal form.
#[derive(Clone)]
pub struct ChowClass {
    ring: Arc<TowerRing>,
    poly: QPoly,
}

impl PartialEq for ChowClass {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) && self.poly == o.poly
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.poly.to_string_with(&refs))
    }
}

impl ChowClass {
    pub fn new(ring: &Arc<TowerRing>, poly: &QPoly) -> Self {
        ChowClass { ring: ring.clone(), poly: ring.normal_form(poly) }
    }

    pub fn zero(ring: &Arc<TowerRing>) -> Self {
        ChowClass { ring: ring.clone(), poly: ring.zero() }
    }

    pub fn one(ring: &Arc<TowerRing>) -> Self {
        ChowClass { ring: ring.clone(), poly: ring.one() }
    }

    pub fn from_i64(ring: &Arc<TowerRing>, c: i64) -> Self {
        ChowClass { ring: ring.clone(), poly: ring.constant(rat(c)) }
    }

    /// The class of generator `k`.
    pub fn generator(ring: &Arc<TowerRing>, k: usize) -> Self {
        Self::new(ring, &ring.var(k))
    }

    pub fn ring(&self) -> &Arc<TowerRing> {
        &self.ring
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::SceneMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(ChowClass { ring: self.ring.clone(), poly: self.poly.add(&o.poly) })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(ChowClass { ring: self.ring.clone(), poly: self.poly.sub(&o.poly) })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(ChowClass { ring: self.ring.clone(), poly: self.ring.mul(&self.poly, &o.poly) })
    }

    pub fn neg(&self) -> Self {
        ChowClass { ring: self.ring.clone(), poly: self.poly.neg() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ChowClass { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        ChowClass { ring: self.ring.clone(), poly: self.ring.pow(&self.poly, k) }
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        ChowClass { ring: self.ring.clone(), poly: self.poly.component(d) }
    }

    /// Move into a ring that contains this one.
    pub fn pull_to(&self, target: &Arc<TowerRing>) -> Result<Self> {
        let off = target.offset_of(&self.ring).ok_or(Error::SceneMismatch)?;
        Ok(self.embed_at(target, off))
    }

    pub(crate) fn embed_at(&self, target: &Arc<TowerRing>, offset: usize) -> Self {
        ChowClass { ring: target.clone(), poly: target.normal_form(&target.lift(&self.poly, offset)) }
    }
}

/// A virtual bundle: rank plus Chern character (truncated at the ring's
/// top degree, above which every class vanishes).
#[derive(Clone)]
pub struct BundleClass {
    ring: Arc<TowerRing>,
    rank: i64,
    ch: QPoly,
}

impl fmt::Debug for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bundle(rank {}, ch = {:?})", self.rank, ChowClass { ring: self.ring.clone(), poly: self.ch.clone() })
    }
}

impl PartialEq for BundleClass {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) && self.rank == o.rank && self.ch == o.ch
    }
}

impl BundleClass {
    /// The trivial bundle of rank `r` (negative for virtual differences).
    pub fn trivial(ring: &Arc<TowerRing>, r: i64) -> Self {
        BundleClass { ring: ring.clone(), rank: r, ch: ring.constant(rat(r)) }
    }

    /// The line bundle with first Chern class `c1`.
    pub fn line(c1: &ChowClass) -> Self {
        let ring = c1.ring.clone();
        let d1 = c1.poly.component(1);
        let ch = ring.exp(&d1);
        BundleClass { ring, rank: 1, ch }
    }

    /// Build from a Chern character.
    pub fn from_ch(ch: &ChowClass) -> Result<Self> {
        let c0 = ch.poly.component(0).constant_value().unwrap_or_else(BigRational::zero);
        if !c0.is_integer() {
            return Err(Error::NonIntegral(c0.to_string()));
        }
        let rank = i64::try_from(c0.to_integer()).map_err(|_| Error::Invalid("rank out of range".into()))?;
        Ok(BundleClass { ring: ch.ring.clone(), rank, ch: ch.poly.clone() })
    }

    /// Build from a rank and a total Chern class.
    pub fn from_chern(rank: i64, total: &ChowClass) -> Result<Self> {
        let ring = total.ring.clone();
        let top = ring.top_degree();
        let c0 = total.poly.component(0).constant_value().unwrap_or_else(BigRational::zero);
        if c0 != BigRational::one() {
            return Err(Error::Invalid("total Chern class must start with 1".into()));
        }
        let e: Vec<QPoly> = (0..=top).map(|k| total.poly.component(k)).collect();
        // Newton: p_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(k-1+i) e_{k-i} p_i
        let mut p: Vec<QPoly> = vec![ring.zero()];
        for k in 1..=top as usize {
            let sgn = if (k - 1) % 2 == 0 { 1 } else { -1 };
            let mut acc = e[k].scale(&rat(sgn * k as i64));
            for i in 1..k {
                let s = if (k - 1 + i) % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&ring.mul(&e[k - i], &p[i]).scale(&rat(s)));
            }
            p.push(acc);
        }
        let mut ch = ring.constant(rat(rank));
        for (k, pk) in p.iter().enumerate().skip(1) {
            ch = ch.add(&pk.scale(&BigRational::new(One::one(), factorial(k as u32))));
        }
        Ok(BundleClass { ring, rank, ch })
    }

    pub fn ring(&self) -> &Arc<TowerRing> {
        &self.ring
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn ch(&self) -> ChowClass {
        ChowClass { ring: self.ring.clone(), poly: self.ch.clone() }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::SceneMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(BundleClass { ring: self.ring.clone(), rank: self.rank + o.rank, ch: self.ch.add(&o.ch) })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(BundleClass { ring: self.ring.clone(), rank: self.rank - o.rank, ch: self.ch.sub(&o.ch) })
    }

    /// Direct sum of several bundles.
    pub fn sum(parts: &[BundleClass]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty sum".into()))?;
        let mut acc = BundleClass::trivial(&first.ring, 0);
        for p in parts {
            acc = acc.add(p)?;
        }
        Ok(acc)
    }

    /// The class of `middle - sub` for an exact sequence
    /// `0 -> sub -> middle -> quotient -> 0`, with both ends given as sums.
    pub fn from_sequence(middle_terms: &[BundleClass], sub_terms: &[BundleClass]) -> Result<Self> {
        let m = Self::sum(middle_terms)?;
        match sub_terms.is_empty() {
            true => Ok(m),
            false => m.sub(&Self::sum(sub_terms)?),
        }
    }

    /// `k` copies.
    pub fn times(&self, k: i64) -> Self {
        BundleClass { ring: self.ring.clone(), rank: self.rank * k, ch: self.ch.scale(&rat(k)) }
    }

    pub fn dual(&self) -> Self {
        BundleClass { ring: self.ring.clone(), rank: self.rank, ch: self.ring.scale_degrees(&self.ch, -1) }
    }

    pub fn tensor(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(BundleClass { ring: self.ring.clone(), rank: self.rank * o.rank, ch: self.ring.mul(&self.ch, &o.ch) })
    }

    /// Tensor with a line bundle.
    pub fn twist(&self, line: &Self) -> Result<Self> {
        if line.rank != 1 {
            return Err(Error::RankMismatch(format!("twist by a rank {} class", line.rank)));
        }
        self.tensor(line)
    }

    /// Adams operation ψ^k.
    pub fn adams(&self, k: i64) -> Self {
        BundleClass { ring: self.ring.clone(), rank: self.rank, ch: self.ring.scale_degrees(&self.ch, k) }
    }

    /// λ-operations or symmetric powers through the Newton recursion
    /// `k·s_k = Σ_{i=1}^k ε^{i-1} ψ^i · s_{k-i}` with `ε = -1` for λ.
    fn newton_power(&self, k: u32, alternating: bool) -> Result<Self> {
        if self.rank < 0 {
            return Err(Error::RankMismatch(format!("power operation on rank {}", self.rank)));
        }
        let ring = &self.ring;
        let mut s: Vec<QPoly> = vec![ring.one()];
        for j in 1..=k as usize {
            let mut acc = ring.zero();
            for i in 1..=j {
                let psi = ring.scale_degrees(&self.ch, i as i64);
                let t = ring.mul(&psi, &s[j - i]);
                acc = if alternating && i % 2 == 0 { acc.sub(&t) } else { acc.add(&t) };
            }
            s.push(acc.scale(&BigRational::new(One::one(), BigInt::from(j))));
        }
        Self::from_ch(&ChowClass { ring: ring.clone(), poly: s.pop().unwrap() })
    }

    pub fn wedge(&self, k: u32) -> Result<Self> {
        self.newton_power(k, true)
    }

    pub fn sym(&self, k: u32) -> Result<Self> {
        self.newton_power(k, false)
    }

    pub fn det(&self) -> Result<Self> {
        if self.rank < 0 {
            return Err(Error::RankMismatch(format!("determinant of rank {}", self.rank)));
        }
        // exp(c1) is the determinant for every virtual class of rank >= 0
        Ok(BundleClass::line(&self.chern(1)))
    }

    /// Power sums of the Chern roots, `p_k = k! ch_k`, for `k = 0..=top`.
    fn power_sums(&self) -> Vec<QPoly> {
        let top = self.ring.top_degree();
        (0..=top)
            .map(|k| self.ch.component(k).scale(&BigRational::from_integer(factorial(k))))
            .collect()
    }

    /// Chern classes `c_0..=c_top`.
    pub fn chern_classes(&self) -> Vec<ChowClass> {
        let ring = &self.ring;
        let p = self.power_sums();
        let mut e: Vec<QPoly> = vec![ring.one()];
        for k in 1..p.len() {
            let mut acc = ring.zero();
            for i in 1..=k {
                let t = ring.mul(&e[k - i], &p[i]);
                acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
            }
            e.push(acc.scale(&BigRational::new(One::one(), BigInt::from(k))));
        }
        e.into_iter().map(|poly| ChowClass { ring: ring.clone(), poly }).collect()
    }

    pub fn chern(&self, i: u32) -> ChowClass {
        if i > self.ring.top_degree() {
            return ChowClass::zero(&self.ring);
        }
        self.chern_classes().swap_remove(i as usize)
    }

    pub fn total_chern(&self) -> ChowClass {
        let mut acc = self.ring.zero();
        for c in self.chern_classes() {
            acc = acc.add(&c.poly);
        }
        ChowClass { ring: self.ring.clone(), poly: acc }
    }

    /// Top Chern class `c_rank`.
    pub fn top_chern(&self) -> Result<ChowClass> {
        if self.rank < 0 {
            return Err(Error::RankMismatch(format!("top Chern class of rank {}", self.rank)));
        }
        Ok(self.chern(self.rank as u32))
    }

    /// Todd class `exp(Σ a_k p_k)` with `Σ a_k x^k = log(x / (1 - e^{-x}))`.
    pub fn todd(&self) -> ChowClass {
        let ring = &self.ring;
        let top = ring.top_degree() as usize;
        let a = todd_log_coefficients(top);
        let p = self.power_sums();
        let mut s = ring.zero();
        for k in 1..=top {
            s = s.add(&p[k].scale(&a[k]));
        }
        ChowClass { ring: ring.clone(), poly: ring.exp(&s) }
    }

    /// Move into a ring that contains this one.
    pub fn pull_to(&self, target: &Arc<TowerRing>) -> Result<Self> {
        let ch = self.ch().pull_to(target)?;
        Ok(BundleClass { ring: target.clone(), rank: self.rank, ch: ch.poly })
    }

    pub(crate) fn embed_at(&self, target: &Arc<TowerRing>, offset: usize) -> Self {
        BundleClass { ring: target.clone(), rank: self.rank, ch: self.ch().embed_at(target, offset).poly }
    }
}

/// Coefficients `a_0..=a_n` of `log(x / (1 - e^{-x}))`.
pub(crate) fn todd_log_coefficients(n: usize) -> Vec<BigRational> {
    // g = (1 - e^{-x}) / x = Σ (-1)^j x^j / (j+1)!
    let g: Vec<BigRational> = (0..=n)
        .map(|j| {
            let s = if j % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(s), factorial(j as u32 + 1))
        })
        .collect();
    // log(x / (1 - e^{-x})) = -log g, with g = 1 + u
    let mut u = g.clone();
    u[0] = BigRational::zero();
    let mul = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
                c[i + j] += ai * bj;
            }
        }
        c
    };
    let mut out = vec![BigRational::zero(); n + 1];
    let mut pw = u.clone();
    for m in 1..=n {
        let coef = BigRational::new(BigInt::from(if m % 2 == 1 { 1 } else { -1 }), BigInt::from(m));
        for k in 0..=n {
            out[k] -= &coef * &pw[k];
        }
        pw = mul(&pw, &u);
    }
    out
}

/// Integer value of a rational, or a non-integrality error.
pub fn expect_integer(q: &BigRational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NonIntegral(q.to_string()));
    }
    let v = q.to_integer();
    i64::try_from(&v).map_err(|_| Error::NonIntegral(format!("{} overflows", v.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn todd_series_start() {
        let a = todd_log_coefficients(4);
        assert_eq!(a[1], BigRational::new(1.into(), 2.into()));
        assert_eq!(a[2], BigRational::new(BigInt::from(-1), BigInt::from(24)));
        assert!(a[3].is_zero());
        assert_eq!(a[4], BigRational::new(BigInt::from(1), BigInt::from(2880)));
    }
}
