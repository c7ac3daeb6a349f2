//! Symmetric degeneracy classes and double covers branched at nodes.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bundle::{expect_integer, BundleClass, ChowClass};
use super::scene::Scene;
use crate::error::{Error, Result};

/// Class of the corank-`r` locus of a general symmetric map
/// `q: E -> E^∨ ⊗ L`. With `c = c(E^∨ ⊗ L^{1/2})` it is
/// `2^r · det[c_{λ_i + j - i}]` for the staircase `λ = (r, r-1, ..., 1)`.
/// The half twist is taken on Chern characters, `ch(L^{1/2}) = exp(c1(L)/2)`,
/// so no ring extension is needed.
pub fn symmetric_degeneracy_class(x: &Scene, e: &BundleClass, l: &BundleClass, r: u32) -> Result<ChowClass> {
    let e = x.pullback(e)?;
    let l = x.pullback(l)?;
    if l.rank() != 1 {
        return Err(Error::RankMismatch(format!("twisting class has rank {}", l.rank())));
    }
    let half = l.chern(1).scale(&BigRational::new(1.into(), 2.into()));
    let twisted = BundleClass::from_ch(&e.dual().ch().mul(&BundleClass::line(&half).ch())?)?;
    let c = twisted.chern_classes();
    let ring = x.ring();
    let entry = |k: i64| -> ChowClass {
        if k < 0 || k as usize >= c.len() {
            ChowClass::zero(ring)
        } else {
            c[k as usize].clone()
        }
    };
    let n = r as usize;
    let lambda: Vec<i64> = (0..n).map(|i| (r as i64) - i as i64).collect();
    let m: Vec<Vec<ChowClass>> = (0..n)
        .map(|i| (0..n).map(|j| entry(lambda[i] + j as i64 - i as i64)).collect())
        .collect();
    let det = determinant(&m, ring)?;
    Ok(det.scale_i64(1 << r))
}

fn determinant(m: &[Vec<ChowClass>], ring: &std::sync::Arc<super::TowerRing>) -> Result<ChowClass> {
    let n = m.len();
    if n == 0 {
        return Ok(ChowClass::one(ring));
    }
    let mut acc = ChowClass::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<ChowClass>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = m[0][j].mul(&determinant(&minor, ring)?)?;
        acc = if j % 2 == 0 { acc.add(&t)? } else { acc.sub(&t)? };
    }
    Ok(acc)
}

/// `∫ [D_r] · polarization^power` for a general symmetric `q: E -> E^∨ ⊗ L`.
pub fn symmetric_degeneracy_count(
    x: &Scene,
    e: &BundleClass,
    l: &BundleClass,
    r: u32,
    polarization: &ChowClass,
    power: u32,
) -> Result<i64> {
    let codim = r * (r + 1) / 2;
    if codim + power != x.dim() {
        return Err(Error::Codimension(format!(
            "corank {r} has codimension {codim}, plus power {power}, on a {}-dimensional scene",
            x.dim()
        )));
    }
    let class = symmetric_degeneracy_class(x, e, l, r)?;
    let pol = x.pullback_class(polarization)?.pow(power);
    let v = x.integral(&class.mul(&pol)?)?;
    if v.is_zero() {
        return Ok(0);
    }
    expect_integer(&v)
}

/// Invariants of the double cover of a nodal surface branched exactly at
/// its nodes, computed from the smooth model of the same degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalCover {
    pub euler: i64,
    pub k2: i64,
    pub chi: i64,
}

pub fn nodal_cover_invariants(e_smooth: i64, k2_smooth: i64, nodes: i64) -> Result<NodalCover> {
    if nodes < 0 {
        return Err(Error::Invalid(format!("negative node count {nodes}")));
    }
    let euler = 2 * e_smooth - 3 * nodes;
    let k2 = 2 * k2_smooth;
    let total = k2 + euler;
    if total.rem_euclid(12) != 0 {
        return Err(Error::NonIntegral(format!("({k2} + {euler}) / 12")));
    }
    Ok(NodalCover { euler, k2, chi: total / 12 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodal_cover_values() {
        assert_eq!(nodal_cover_invariants(64, 8, 20).unwrap(), NodalCover { euler: 68, k2: 16, chi: 7 });
        assert_eq!(nodal_cover_invariants(55, 5, 16).unwrap(), NodalCover { euler: 62, k2: 10, chi: 6 });
        assert_eq!(nodal_cover_invariants(108, 24, 40).unwrap(), NodalCover { euler: 96, k2: 48, chi: 12 });
        assert!(matches!(nodal_cover_invariants(55, 5, 15), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn quadric_surface_discriminant_in_p1() {
        // a general symmetric 1x1 family: the divisor of a section of E^∨⊗E^∨⊗L
        let p1 = Scene::projective_space(1).unwrap();
        let o1 = p1.bundle("O(1)").unwrap();
        let e = p1.trivial(1);
        let l = o1.tensor(&o1).unwrap();
        let class = symmetric_degeneracy_class(&p1, &e, &l, 1).unwrap();
        assert_eq!(p1.integral_int(&class).unwrap(), 2);
    }
}
