//! Quadric bundles as graded symmetric polynomial matrices. The submodules
//! compute discriminants and hyperbolic reductions of the conic bundle
//! families, then count the nodes of the discriminants.

pub mod discriminant;
pub mod families;
pub mod form;
pub mod linalg;
pub mod nodes;
pub mod reduce;

pub use discriminant::{discriminant, DiscriminantReport, DiscriminantSummary};
pub use families::{extend_c4, extend_gm21, generate, generate_family, C4Data, FamilyName, Generated, Gm21Data};
pub use form::{AnyForm, BaseSpec, FormFile, GradedQuadraticForm, IsotropicDirection, Relation, Violation};
pub use nodes::{count_nodes, count_singular_points, NodeReport, NodeStatus};
pub use reduce::{reduce, verify_reduction_invariance, InvarianceReport, Reduction};
