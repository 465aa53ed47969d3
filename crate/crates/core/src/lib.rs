//! Graph symmetry toolkit.
//!
//! Constructs the classical highly symmetric graph families (Johnson,
//! Hamming, odd, Paley, Taylor double covers, projective-plane
//! incidence graphs, …), computes their full automorphism groups, and
//! decides s-distance, s-geodesic, and s-arc transitivity.

pub mod autiso;
pub mod error;
pub mod families;
pub mod field;
pub mod graph;
pub mod group;
pub mod perm;
pub mod psl;
pub mod transitivity;

pub use autiso::{automorphism_group, canonical_form, are_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{Graph, Metrics, VertexPartition};
pub use group::PermGroup;
pub use perm::Perm;
pub use transitivity::{profile, IntersectionData, TransitivityProfile};
