//! Antimagic edge labelings for forests.
//!
//! An edge labeling of a graph with m edges is a bijection from the edges
//! onto [1,m]; it is antimagic when all vertex sums (the totals of the
//! labels incident to each vertex) are pairwise distinct. This crate
//! constructs antimagic labelings for forests that have at most one
//! degree-2 vertex and no single-edge components, and certifies every
//! construction with an independent verifier and a brute-force search at
//! small sizes.
//!
//! The construction rests on zero-sum partitions: [1,k] is split into
//! classes of prescribed sizes whose element sums vanish modulo k+1 (even
//! k) or k (odd k). Assigning each class to the outgoing edges of one
//! vertex of a rooted tree separates all vertex sums by residue.

pub mod format;
pub mod generate;
pub mod graph;
pub mod labeler;
pub mod labeling;
pub mod oracle;
pub mod partition;
pub mod rooted;
pub mod verify;

pub use format::{
    forest_dot, labeling_dot, parse_document, parse_forest, parse_labeled, serialize_forest,
    serialize_labeling, FORMAT_HEADER,
};
pub use generate::{generate_forest, ForestSpec, GenerateError};
pub use graph::{Edge, Forest, GraphError, HypothesisReport, IneligibleReason};
pub use labeler::{
    assign_class_to_edges, label_forest, label_forest_with_plan, label_tree_even, leaf_roots,
    plan, CaseTag, LabelError, LabelingPlan, Reservation, ReservationKind, SpecialEdge,
};
pub use labeling::EdgeLabeling;
pub use oracle::{oracle_search, OracleMode, OracleOutcome, DEFAULT_ORACLE_BOUND};
pub use partition::{
    abc_partition, decompose_size, zero_sum_partition, AbcPartition, AbcSet, Constraint,
    PartitionClass, PartitionError, SetKind, SizeDecomposition, ZeroSumPartition,
};
pub use rooted::{identify_roots, root_components, split_labeling, IdentifiedTree, RootedForest};
pub use verify::{verify_antimagic, vertex_sums, VerifyError, VertexSumReport};
