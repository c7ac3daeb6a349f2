//! Reference values the computations are compared against.

use hypred::chow::{NodeFamily, SceneName, SurfaceInvariants};
use hypred::quadbundle::FamilyName;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedInvariants {
    pub chi_o: i64,
    pub euler: i64,
    pub k2: i64,
    pub chi_anti_k: i64,
    pub chi_t: Option<i64>,
}

impl ExpectedInvariants {
    pub fn matches(&self, s: &SurfaceInvariants) -> bool {
        self.chi_o == s.chi_o
            && self.euler == s.euler
            && self.k2 == s.k2
            && self.chi_anti_k == s.chi_anti_k
            && self.chi_t.map_or(true, |t| t == s.chi_t)
    }
}

const C4_R62: ExpectedInvariants = ExpectedInvariants { chi_o: 6, euler: 62, k2: 10, chi_anti_k: 16, chi_t: None };
const GM20: ExpectedInvariants = ExpectedInvariants { chi_o: 12, euler: 96, k2: 48, chi_anti_k: 60, chi_t: Some(-24) };
const GM21: ExpectedInvariants = ExpectedInvariants { chi_o: 7, euler: 68, k2: 16, chi_anti_k: 23, chi_t: Some(-38) };

/// Reference invariants of a named surface. The two consistency scenes are
/// expected to agree with the surface they are isomorphic to.
pub fn invariants(name: SceneName) -> ExpectedInvariants {
    match name {
        SceneName::C4R62F => C4_R62,
        SceneName::Gm20F | SceneName::K331F => GM20,
        SceneName::Gm21F | SceneName::K335F => GM21,
    }
}

pub fn node_prediction(family: NodeFamily) -> i64 {
    match family {
        NodeFamily::C4 => 16,
        NodeFamily::Gm20 => 40,
        NodeFamily::Gm21 => 20,
        NodeFamily::Verra => 72,
    }
}

/// Expected node count of a generated family's discriminant, when known.
pub fn family_nodes(family: FamilyName) -> Option<usize> {
    match family {
        FamilyName::C4 | FamilyName::C4WithPlane | FamilyName::YC4R62 => Some(16),
        FamilyName::Gm21 | FamilyName::YGm21K335 => Some(20),
        FamilyName::Gm20Chart | FamilyName::YGm20K331Chart => Some(40),
        FamilyName::Gm21Tau => None,
    }
}

/// Expected degree of a generated family's discriminant.
pub fn family_degree(family: FamilyName) -> i64 {
    match family {
        FamilyName::C4 | FamilyName::C4WithPlane | FamilyName::YC4R62 => 5,
        FamilyName::Gm21 | FamilyName::Gm21Tau | FamilyName::YGm21K335 => 4,
        FamilyName::Gm20Chart | FamilyName::YGm20K331Chart => 6,
    }
}

/// Smooth-model data `(e, K²)` and node count of the double covers.
pub const NODAL_COVERS: [(&str, i64, i64, i64, SceneName); 3] = [
    ("C4_R62_F", 55, 5, 16, SceneName::C4R62F),
    ("GM21_F", 64, 8, 20, SceneName::Gm21F),
    ("GM20_F", 108, 24, 40, SceneName::Gm20F),
];
