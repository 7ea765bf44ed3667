//! Isomorph-free enumeration of simple 3-connected graphs, organised around
//! H-minors and H-preserving deletable edges.
//!
//! The building blocks are [`Graph`] with its elementary operations, canonical
//! labeling ([`canonical`]), 3-connectivity predicates ([`connectivity`]),
//! minor tests ([`minors`]), the named families ([`families`]), candidate
//! generation ([`construction`]) and the level-by-level engines with their
//! bound verifiers ([`enumeration`]).

pub mod canonical;
pub mod connectivity;
pub mod construction;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod minors;

pub use canonical::{
    are_isomorphic, canonical_code, canonical_form, dedup_insert, CanonicalCode, DedupStore, Member,
};
pub use connectivity::{deletable_edges, is_minimally_three_connected, is_three_connected};
pub use construction::{ConstructionStep, Operation, OperationMask, ProvenanceChain};
pub use enumeration::{BoundReport, LevelSet};
pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use graph::{edge, Edge, Graph, SplitSpec, VertexSet};
pub use minors::{
    find_minor_witness, has_minor, has_no_preserving_deletable_edge, oracle_has_minor,
    preserving_deletable_edges, MinorTester, MinorWitness,
};
