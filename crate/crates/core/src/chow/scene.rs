//! Scenes: a tower ring with its dimension and tangent class, plus the
//! functional used to integrate.
//!
//! Integration is `α ↦ ∫_ring α_dim · weight`. The weight starts at 1 and
//! picks up the fiber point class of every partial flag (whose ring is that
//! of the full flag tower) and the top Chern class of every bundle whose
//! zero locus is taken.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bundle::{expect_integer, BundleClass, ChowClass};
use super::ring::{Generator, QPoly, TowerRing};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct Scene {
    ring: Arc<TowerRing>,
    dim: u32,
    weight: QPoly,
    tangent: BundleClass,
    bundles: BTreeMap<String, BundleClass>,
    classes: BTreeMap<String, ChowClass>,
    flags: usize,
}

/// Numerical invariants of a surface, all exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi_o: i64,
    pub euler: i64,
    pub k2: i64,
    pub chi_anti_k: i64,
    pub chi_t: i64,
    pub noether_ok: bool,
    pub xiao_strict: bool,
    /// `euler - 2`, the second Betti number when the irregularity is zero.
    pub b2_if_q0: i64,
}

impl Scene {
    /// The point.
    pub fn point() -> Self {
        let ring = Arc::new(TowerRing::point());
        Scene {
            tangent: BundleClass::trivial(&ring, 0),
            weight: ring.one(),
            ring,
            dim: 0,
            bundles: BTreeMap::new(),
            classes: BTreeMap::new(),
            flags: 0,
        }
    }

    /// `P^n` with hyperplane class named `h`.
    pub fn projective_space(n: u32) -> Result<Self> {
        Self::projective_space_named(n, "h")
    }

    /// `P^n` with a chosen name for the hyperplane class. Registered
    /// bundles: `O(1)`, `O(-1)` and the rank-`n` quotient `Q` of the Euler
    /// sequence `0 -> O(-1) -> O^{n+1} -> Q -> 0`.
    pub fn projective_space_named(n: u32, h: &str) -> Result<Self> {
        if n == 0 || n > u16::MAX as u32 - 1 {
            return Err(Error::Invalid(format!("projective space of dimension {n}")));
        }
        let ring = Arc::new(TowerRing::new(vec![Generator {
            name: h.to_string(),
            bound: n as u16 + 1,
            tail: Polynomial::zero(&Rationals, 1),
            sign: 1,
        }]));
        let hc = ChowClass::generator(&ring, 0);
        let o1 = BundleClass::line(&hc);
        let om1 = o1.dual();
        let q = BundleClass::trivial(&ring, n as i64 + 1).sub(&om1)?;
        let tangent = o1.times(n as i64 + 1).sub(&BundleClass::trivial(&ring, 1))?;
        let mut bundles = BTreeMap::new();
        bundles.insert("O(1)".to_string(), o1);
        bundles.insert("O(-1)".to_string(), om1);
        bundles.insert("Q".to_string(), q);
        let mut classes = BTreeMap::new();
        classes.insert(h.to_string(), hc);
        Ok(Scene { weight: ring.one(), ring, dim: n, tangent, bundles, classes, flags: 0 })
    }

    /// Product of two scenes. Registry names present in both factors are
    /// renamed with prefixes `1.` and `2.`.
    pub fn product(a: &Scene, b: &Scene) -> Result<Self> {
        let na = a.ring.nvars();
        let n = na + b.ring.nvars();
        let mut gens = Vec::with_capacity(n);
        for g in a.ring.generators() {
            gens.push(Generator { tail: g.tail.embed(n, 0), ..g.clone() });
        }
        for g in b.ring.generators() {
            gens.push(Generator { tail: g.tail.embed(n, na), ..g.clone() });
        }
        let mut ring = TowerRing::new(gens);
        // a scene times itself has two embeddings; neither is canonical
        if !Arc::ptr_eq(&a.ring, &b.ring) {
            ring.register_embedding(&a.ring, 0);
            ring.register_embedding(&b.ring, na);
        }
        let ring = Arc::new(ring);
        let wa = ring.lift(&a.weight, 0);
        let wb = ring.lift(&b.weight, na);
        let weight = ring.mul(&wa, &wb);
        let tangent = a.tangent.embed_at(&ring, 0).add(&b.tangent.embed_at(&ring, na))?;
        let mut bundles = BTreeMap::new();
        for (k, v) in &a.bundles {
            let key = if b.bundles.contains_key(k) { format!("1.{k}") } else { k.clone() };
            bundles.insert(key, v.embed_at(&ring, 0));
        }
        for (k, v) in &b.bundles {
            let key = if a.bundles.contains_key(k) { format!("2.{k}") } else { k.clone() };
            bundles.insert(key, v.embed_at(&ring, na));
        }
        let mut classes = BTreeMap::new();
        for (k, v) in &a.classes {
            let key = if b.classes.contains_key(k) { format!("1.{k}") } else { k.clone() };
            classes.insert(key, v.embed_at(&ring, 0));
        }
        for (k, v) in &b.classes {
            let key = if a.classes.contains_key(k) { format!("2.{k}") } else { k.clone() };
            classes.insert(key, v.embed_at(&ring, na));
        }
        Ok(Scene { ring, dim: a.dim + b.dim, weight, tangent, bundles, classes, flags: a.flags + b.flags })
    }

    /// Partial flag bundle of `e` with successive pieces of the given ranks,
    /// listed from the innermost subbundle outwards. Registered bundles:
    /// the pieces `Q1..Qk` and the cumulative subbundles `U1..Uk`
    /// (`Uk = e`). Earlier registry entries with those names are replaced.
    pub fn flag_bundle(base: &Scene, e: &BundleClass, ranks: &[usize]) -> Result<Self> {
        let e = base.pullback(e)?;
        let n: usize = ranks.iter().sum();
        if ranks.is_empty() || ranks.contains(&0) || n as i64 != e.rank() {
            return Err(Error::RankMismatch(format!("pieces {:?} for a bundle of rank {}", ranks, e.rank())));
        }
        let nb = base.ring.nvars();
        let nnew = n - 1;
        let nv = nb + nnew;
        let f = &Rationals;
        let cls = e.chern_classes();
        let c_e: QPoly = cls
            .iter()
            .take(n + 1)
            .fold(Polynomial::zero(f, nv), |acc, c| acc.add(&c.poly().embed(nv, 0)));
        let mut gens: Vec<Generator> = base
            .ring
            .generators()
            .iter()
            .map(|g| Generator { tail: g.tail.embed(nv, 0), ..g.clone() })
            .collect();
        let level = base.flags + 1;
        let mut c_v = c_e.truncate(n as u32);
        for k in 0..nnew {
            let m = n - k;
            let x = Polynomial::var(f, nv, nb + k);
            // x^m = -Σ_{i>=1} (-1)^i c_i(V) x^{m-i}
            let mut tail = Polynomial::zero(f, nv);
            for i in 1..=m {
                let ci = c_v.component(i as u32);
                if ci.is_zero() {
                    continue;
                }
                let t = ci.mul(&x.pow((m - i) as u32));
                tail = if i % 2 == 1 { tail.add(&t) } else { tail.sub(&t) };
            }
            gens.push(Generator {
                name: format!("x{level}_{}", k + 1),
                bound: m as u16,
                tail,
                sign: if (m - 1) % 2 == 0 { 1 } else { -1 },
            });
            // divide by (1 + x)
            let mut inv = Polynomial::one(f, nv);
            let mut pw = Polynomial::one(f, nv);
            let negx = x.neg();
            for _ in 1..m {
                pw = pw.mul(&negx);
                inv = inv.add(&pw);
            }
            c_v = c_v.mul_truncated(&inv, Some((m - 1) as u32));
        }
        let mut ring = TowerRing::new(gens);
        ring.register_embedding(&base.ring, 0);
        let ring = Arc::new(ring);
        let c1 = e.chern(1).pull_to(&ring)?;
        let mut roots: Vec<ChowClass> = (0..nnew).map(|k| ChowClass::generator(&ring, nb + k)).collect();
        let mut last = c1;
        for r in &roots {
            last = last.sub(r)?;
        }
        roots.push(last);
        let mut pieces = Vec::new();
        let mut omega = ring.one();
        let mut a = 0;
        for &r in ranks {
            let mut piece = BundleClass::trivial(&ring, 0);
            for root in &roots[a..a + r] {
                piece = piece.add(&BundleClass::line(root))?;
            }
            for i in 1..r {
                let t = roots[a + i - 1].neg().pow((r - i) as u32);
                omega = ring.mul(&omega, t.poly());
            }
            pieces.push(piece);
            a += r;
        }
        let weight = ring.mul(&ring.lift(&base.weight, 0), &omega);
        let mut tangent = base.tangent.pull_to(&ring)?;
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                tangent = tangent.add(&pieces[i].dual().tensor(&pieces[j])?)?;
            }
        }
        let mut bundles = BTreeMap::new();
        for (k, v) in &base.bundles {
            bundles.insert(k.clone(), v.pull_to(&ring)?);
        }
        let mut classes = BTreeMap::new();
        for (k, v) in &base.classes {
            classes.insert(k.clone(), v.pull_to(&ring)?);
        }
        let mut cum = BundleClass::trivial(&ring, 0);
        for (j, p) in pieces.iter().enumerate() {
            cum = cum.add(p)?;
            bundles.insert(format!("Q{}", j + 1), p.clone());
            bundles.insert(format!("U{}", j + 1), cum.clone());
        }
        for (k, r) in roots.iter().enumerate() {
            classes.insert(format!("x{level}_{}", k + 1), r.clone());
        }
        Ok(Scene {
            ring,
            dim: base.dim + ranks_dim(ranks),
            weight,
            tangent,
            bundles,
            classes,
            flags: level,
        })
    }

    /// Numerical model of the zero locus of a general section of `v`:
    /// same ring, integrals twisted by `c_top(v)`.
    pub fn section_zero_locus(x: &Scene, v: &BundleClass) -> Result<Self> {
        let v = x.pullback(v)?;
        if v.rank() < 0 || v.rank() as u32 > x.dim {
            return Err(Error::Codimension(format!("rank {} bundle on a {}-dimensional scene", v.rank(), x.dim)));
        }
        let ct = v.top_chern()?;
        let weight = x.ring.mul(&x.weight, ct.poly());
        Ok(Scene {
            ring: x.ring.clone(),
            dim: x.dim - v.rank() as u32,
            weight,
            tangent: x.tangent.sub(&v)?,
            bundles: x.bundles.clone(),
            classes: x.classes.clone(),
            flags: x.flags,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn ring(&self) -> &Arc<TowerRing> {
        &self.ring
    }

    pub fn tangent(&self) -> &BundleClass {
        &self.tangent
    }

    pub fn bundle(&self, name: &str) -> Result<BundleClass> {
        self.bundles.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn bundle_names(&self) -> Vec<String> {
        self.bundles.keys().cloned().collect()
    }

    pub fn class(&self, name: &str) -> Result<ChowClass> {
        self.classes.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Register a bundle under a name (replacing any previous entry).
    pub fn register_bundle(&mut self, name: &str, b: &BundleClass) -> Result<()> {
        let b = self.pullback(b)?;
        self.bundles.insert(name.to_string(), b);
        Ok(())
    }

    pub fn trivial(&self, r: i64) -> BundleClass {
        BundleClass::trivial(&self.ring, r)
    }

    pub fn one(&self) -> ChowClass {
        ChowClass::one(&self.ring)
    }

    /// Bring a class from this scene or one of its ancestors into this ring.
    pub fn pullback(&self, b: &BundleClass) -> Result<BundleClass> {
        b.pull_to(&self.ring)
    }

    pub fn pullback_class(&self, c: &ChowClass) -> Result<ChowClass> {
        c.pull_to(&self.ring)
    }

    /// Integral of the degree-`dim` component.
    pub fn integral(&self, c: &ChowClass) -> Result<BigRational> {
        let c = self.pullback_class(c)?;
        let top = c.poly().component(self.dim);
        if top.is_zero() {
            return Ok(BigRational::zero());
        }
        Ok(self.ring.integrate_top(&self.ring.mul(&top, &self.weight)))
    }

    /// Integral asserted to be an integer.
    pub fn integral_int(&self, c: &ChowClass) -> Result<i64> {
        expect_integer(&self.integral(c)?)
    }

    /// Topological Euler number `∫ c_dim(T)`.
    pub fn euler(&self) -> Result<i64> {
        self.integral_int(&self.tangent.chern(self.dim))
    }

    /// Euler characteristic by Hirzebruch–Riemann–Roch.
    pub fn chi_sheaf(&self, f: &BundleClass) -> Result<i64> {
        let f = self.pullback(f)?;
        let td = self.tangent.todd();
        expect_integer(&self.integral(&f.ch().mul(&td)?)?)
    }

    /// True when every integral of `c` against classes of complementary
    /// degree vanishes.
    pub fn is_numerically_zero(&self, c: &ChowClass) -> Result<bool> {
        let c = self.pullback_class(c)?;
        for d in 0..=self.dim {
            let comp = c.component(d);
            if comp.is_zero() {
                continue;
            }
            let prod = self.ring.mul(comp.poly(), &self.weight);
            // test against every monomial of the complementary degree
            let nf = self.ring.normal_form(&prod);
            if nf.is_zero() {
                continue;
            }
            for m in crate::poly::monomials_of_degree(self.ring.nvars(), self.dim - d) {
                let mono = Polynomial::monomial(&Rationals, m, BigRational::one());
                if !self.ring.integrate_top(&self.ring.mul(&nf, &mono)).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// χ(O), e, K², χ(−K) and χ(T) of a surface.
    pub fn surface_invariants(&self) -> Result<SurfaceInvariants> {
        if self.dim != 2 {
            return Err(Error::Codimension(format!("surface invariants need dimension 2, got {}", self.dim)));
        }
        let o = self.trivial(1);
        let chi_o = self.chi_sheaf(&o)?;
        let euler = self.euler()?;
        let c1 = self.tangent.chern(1);
        let k2 = self.integral_int(&c1.pow(2))?;
        let anti_k = self.tangent.det()?;
        let chi_anti_k = self.chi_sheaf(&anti_k)?;
        let chi_t = self.chi_sheaf(&self.tangent)?;
        Ok(SurfaceInvariants {
            chi_o,
            euler,
            k2,
            chi_anti_k,
            chi_t,
            noether_ok: 12 * chi_o == k2 + euler,
            xiao_strict: 3 * k2 < 8 * (chi_o - 2),
            b2_if_q0: euler - 2,
        })
    }
}

/// Relative dimension of a partial flag variety with the given piece ranks.
fn ranks_dim(ranks: &[usize]) -> u32 {
    let mut d = 0;
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            d += ranks[i] * ranks[j];
        }
    }
    d as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(q: BigRational) -> i64 {
        expect_integer(&q).unwrap()
    }

    #[test]
    fn projective_space_basics() {
        let p3 = Scene::projective_space(3).unwrap();
        let h = p3.class("h").unwrap();
        assert_eq!(int(p3.integral(&h.pow(3)).unwrap()), 1);
        assert_eq!(int(p3.integral(&h.pow(2)).unwrap()), 0);
        assert_eq!(int(p3.integral(&h.pow(3).scale_i64(7)).unwrap()), 7);
        assert_eq!(p3.euler().unwrap(), 4);
        assert_eq!(p3.chi_sheaf(&p3.trivial(1)).unwrap(), 1);
        let o2 = p3.bundle("O(1)").unwrap().tensor(&p3.bundle("O(1)").unwrap()).unwrap();
        assert_eq!(p3.chi_sheaf(&o2).unwrap(), 10);
    }

    #[test]
    fn grassmannian_and_flags() {
        let pt = Scene::point();
        let gr = Scene::flag_bundle(&pt, &pt.trivial(4), &[2, 2]).unwrap();
        assert_eq!(gr.dim(), 4);
        assert_eq!(gr.euler().unwrap(), 6);
        let sigma1 = gr.bundle("Q2").unwrap().chern(1);
        assert_eq!(int(gr.integral(&sigma1.pow(4)).unwrap()), 2);
        let fl = Scene::flag_bundle(&pt, &pt.trivial(5), &[1, 1, 3]).unwrap();
        assert_eq!(fl.dim(), 7);
        assert_eq!(fl.euler().unwrap(), 20);
    }

    #[test]
    fn hypersurfaces_in_p3() {
        let p3 = Scene::projective_space(3).unwrap();
        let h = p3.class("h").unwrap();
        let quintic = Scene::section_zero_locus(&p3, &BundleClass::line(&h.scale_i64(5))).unwrap();
        assert_eq!(quintic.euler().unwrap(), 55);
        let quartic = Scene::section_zero_locus(&p3, &BundleClass::line(&h.scale_i64(4))).unwrap();
        let inv = quartic.surface_invariants().unwrap();
        assert_eq!((inv.euler, inv.chi_o, inv.k2), (24, 2, 0));
        assert!(inv.noether_ok);
    }

    #[test]
    fn products() {
        let p2 = Scene::projective_space(2).unwrap();
        let pp = Scene::product(&p2, &p2).unwrap();
        assert_eq!(pp.euler().unwrap(), 9);
        let d = pp.class("1.h").unwrap().add(&pp.class("2.h").unwrap()).unwrap();
        let fl3 = Scene::section_zero_locus(&pp, &BundleClass::line(&d)).unwrap();
        assert_eq!(fl3.euler().unwrap(), 6);
    }
}
