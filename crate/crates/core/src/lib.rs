//! Total irregularity of simple graphs.
//!
//! The crate computes the total irregularity `irr_t` and Albertson's edge
//! irregularity `irr`, implements the branch-transformation that moves a
//! hanging tree onto a pendant vertex (and its exact effect on `irr_t`),
//! enumerates trees, unicyclic, bicyclic and general connected graphs up to
//! isomorphism, and checks the known extremal values of `irr_t` for those
//! families by exhaustive search.

pub mod canon;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod indices;
pub mod sequences;
pub mod transform;
pub mod verify;

pub use canon::{canonical_form, CanonicalCode};
pub use classify::{classify, make_infinity, make_theta, two_core, BicyclicKind, CoreParams, GraphClass};
pub use error::{Graph6Error, GraphError, LimitError, SequenceError, TransformError};
pub use graph::Graph;
pub use graph6::{parse_graph6, write_graph6};
pub use indices::{
    degree_profile, degree_sequence, edge_irregularity, irr_t_of_sequence, total_irregularity,
    DegreeProfile, DegreeSequence,
};
pub use transform::{branch_transform, hanging_trees_at, predicted_delta, reduce_to_minimum, HangingTree, TransformStep};
pub use verify::{Family, VerificationReport};
