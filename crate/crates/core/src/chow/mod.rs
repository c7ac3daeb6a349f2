//! Intersection theory on towers of projective bundles over products of
//! projective spaces, with Riemann–Roch and symmetric degeneracy classes.

pub mod bundle;
pub mod degeneracy;
pub mod named;
pub mod ring;
pub mod scene;

pub use bundle::{BundleClass, ChowClass};
pub use degeneracy::{nodal_cover_invariants, symmetric_degeneracy_count, NodalCover};
pub use named::{node_prediction, scene, NodeFamily, SceneName};
pub use ring::TowerRing;
pub use scene::{Scene, SurfaceInvariants};
