//! The named surface scenes and the degeneracy data of the four node-count
//! predictions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bundle::BundleClass;
use super::degeneracy::symmetric_degeneracy_count;
use super::scene::Scene;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SceneName {
    #[serde(rename = "C4_R62_F")]
    C4R62F,
    #[serde(rename = "GM20_F")]
    Gm20F,
    #[serde(rename = "GM21_F")]
    Gm21F,
    #[serde(rename = "K3_31_F")]
    K331F,
    #[serde(rename = "K3_35_F")]
    K335F,
}

impl SceneName {
    pub const ALL: [SceneName; 5] =
        [SceneName::C4R62F, SceneName::Gm20F, SceneName::Gm21F, SceneName::K331F, SceneName::K335F];

    pub fn as_str(&self) -> &'static str {
        match self {
            SceneName::C4R62F => "C4_R62_F",
            SceneName::Gm20F => "GM20_F",
            SceneName::Gm21F => "GM21_F",
            SceneName::K331F => "K3_31_F",
            SceneName::K335F => "K3_35_F",
        }
    }
}

impl fmt::Display for SceneName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SceneName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SceneName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Build a named surface scene.
pub fn scene(name: SceneName) -> Result<Scene> {
    match name {
        SceneName::C4R62F => c4_r62_surface(),
        SceneName::Gm20F => gm20_surface(),
        SceneName::Gm21F => gm21_surface(),
        SceneName::K331F => k3_31_surface(),
        SceneName::K335F => k3_35_surface(),
    }
}

/// Zero locus of `Sym² W^∨` on the Grassmann bundle of rank-2 subbundles
/// `W` of `e`.
fn conic_lines(base: &Scene, e: &BundleClass) -> Result<Scene> {
    let r = e.rank() as usize;
    let gr = Scene::flag_bundle(base, e, &[2, r - 2])?;
    let w = gr.bundle("Q1")?;
    Scene::section_zero_locus(&gr, &w.dual().sym(2)?)
}

/// `P³` modelled as a hyperplane in `P⁴`, so that bundles built from the
/// Euler sequence of `P⁴` restrict correctly.
fn hyperplane_in_p4() -> Result<(Scene, Scene)> {
    let p4 = Scene::projective_space(4)?;
    let p3 = Scene::section_zero_locus(&p4, &p4.bundle("O(1)")?)?;
    Ok((p4, p3))
}

/// `E^∨` on `P³` from `0 -> O -> O(1) ⊗ Q_{P⁴}^∨ -> E^∨ -> 0`, rank 3.
pub fn gm20_bundle_dual(p3: &Scene) -> Result<BundleClass> {
    let b0 = p3.bundle("O(-1)")?;
    let b1 = p3.bundle("Q")?;
    let middle = b0.tensor(&b1)?.dual();
    BundleClass::from_sequence(&[middle], &[p3.trivial(1)])
}

/// `Gr(2,4)` and the quadric threefold `Q³` inside it (as a Plücker
/// hyperplane section).
fn quadric_threefold() -> Result<(Scene, Scene)> {
    let pt = Scene::point();
    let gr = Scene::flag_bundle(&pt, &pt.trivial(4), &[2, 2])?;
    let u = gr.bundle("Q1")?;
    let plucker = u.det()?.dual();
    let q3 = Scene::section_zero_locus(&gr, &plucker)?;
    Ok((gr, q3))
}

fn c4_r62_surface() -> Result<Scene> {
    let p3 = Scene::projective_space(3)?;
    let e = p3.bundle("O(-1)")?.add(&p3.trivial(3))?;
    let fl = Scene::flag_bundle(&p3, &e, &[1, 2, 1])?;
    let u1 = fl.bundle("Q1")?;
    let u3_over_u1 = fl.bundle("Q2")?;
    let twist = fl.bundle("O(1)")?.add(&fl.trivial(2))?;
    let v = u1.tensor(&u3_over_u1)?.dual().tensor(&twist)?;
    Scene::section_zero_locus(&fl, &v)
}

fn gm20_surface() -> Result<Scene> {
    let (_, p3) = hyperplane_in_p4()?;
    let e = gm20_bundle_dual(&p3)?.dual();
    conic_lines(&p3, &e)
}

fn gm21_surface() -> Result<Scene> {
    let pt = Scene::point();
    let gr = Scene::flag_bundle(&pt, &pt.trivial(4), &[2, 2])?;
    let u = gr.bundle("Q1")?;
    let o_plus_u = gr.trivial(1).add(&u)?;
    let lcal = Scene::flag_bundle(&gr, &o_plus_u, &[1, 2])?;
    let ell = lcal.bundle("Q1")?;
    let f = lcal.bundle("Q2")?;
    let u = lcal.pullback(&u)?;
    let v = u.dual().det()?.add(&f.tensor(&ell)?.sym(2)?.dual())?;
    Scene::section_zero_locus(&lcal, &v)
}

fn k3_31_surface() -> Result<Scene> {
    let p3 = Scene::projective_space(3)?;
    let o1 = p3.bundle("O(1)")?;
    let q_dual_twisted = p3.bundle("Q")?.dual().twist(&o1)?;
    let e_dual = BundleClass::from_sequence(&[p3.trivial(1), q_dual_twisted], &[p3.bundle("O(-1)")?])?;
    conic_lines(&p3, &e_dual.dual())
}

fn k3_35_surface() -> Result<Scene> {
    let (_, q3) = quadric_threefold()?;
    let u = q3.bundle("Q1")?;
    let o_minus1 = u.det()?;
    let f_dual = BundleClass::from_sequence(&[q3.trivial(6)], &[u, o_minus1])?;
    conic_lines(&q3, &f_dual.dual())
}

/// The four node-count predictions of the symmetric degeneracy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeFamily {
    C4,
    Gm20,
    Gm21,
    Verra,
}

impl NodeFamily {
    pub const ALL: [NodeFamily; 4] = [NodeFamily::C4, NodeFamily::Gm20, NodeFamily::Gm21, NodeFamily::Verra];

    pub fn as_str(&self) -> &'static str {
        match self {
            NodeFamily::C4 => "C4",
            NodeFamily::Gm20 => "GM20",
            NodeFamily::Gm21 => "GM21",
            NodeFamily::Verra => "VERRA",
        }
    }
}

/// Predicted number of corank-2 points (nodes of the discriminant, or for
/// the Verra family nodes on a polarization section).
pub fn node_prediction(family: NodeFamily) -> Result<i64> {
    match family {
        NodeFamily::C4 => {
            let p3 = Scene::projective_space(3)?;
            let e = p3.trivial(2).add(&p3.bundle("O(-1)")?)?;
            symmetric_degeneracy_count(&p3, &e, &p3.bundle("O(1)")?, 2, &p3.one(), 0)
        }
        NodeFamily::Gm20 => {
            let (_, p3) = hyperplane_in_p4()?;
            let e = gm20_bundle_dual(&p3)?.dual();
            symmetric_degeneracy_count(&p3, &e, &p3.trivial(1), 2, &p3.one(), 0)
        }
        NodeFamily::Gm21 => {
            let (_, q3) = quadric_threefold()?;
            let u = q3.bundle("Q1")?;
            let e = u.det()?.add(&u)?;
            symmetric_degeneracy_count(&q3, &e, &q3.trivial(1), 2, &q3.one(), 0)
        }
        NodeFamily::Verra => {
            let p2 = Scene::projective_space(2)?;
            let pp = Scene::product(&p2, &p2)?;
            let factor = |i: u32| -> Result<BundleClass> {
                let q = pp.bundle(&format!("{i}.Q"))?;
                q.dual().twist(&pp.bundle(&format!("{i}.O(1)"))?)
            };
            let t = factor(1)?.tensor(&factor(2)?)?;
            let pol = pp.class("1.h")?.add(&pp.class("2.h")?)?;
            symmetric_degeneracy_count(&pp, &t.dual(), &pp.trivial(1), 2, &pol, 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in SceneName::ALL {
            assert_eq!(n.as_str().parse::<SceneName>().unwrap(), n);
        }
        assert!(matches!("X".parse::<SceneName>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn gm20_bundle_chern_classes() {
        let (_, p3) = hyperplane_in_p4().unwrap();
        let e_dual = gm20_bundle_dual(&p3).unwrap();
        assert_eq!(e_dual.rank(), 3);
        let h = p3.class("h").unwrap();
        let c = e_dual.chern_classes();
        // integrate against complementary powers of h on P³
        assert_eq!(p3.integral_int(&c[1].mul(&h.pow(2)).unwrap()).unwrap(), 3);
        assert_eq!(p3.integral_int(&c[2].mul(&h).unwrap()).unwrap(), 4);
        assert_eq!(p3.integral_int(&c[3]).unwrap(), 2);
    }
}
