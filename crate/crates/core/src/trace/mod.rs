//! Traces on the algebra as weight functions on the memoryless tree.
//!
//! The tree has a root `*` and one vertex `(n,k)` for each odd `k` in
//! `0..=2^n`. A function `phi` with `phi(*) = 1` comes from a trace exactly
//! when `phi(v)` dominates the sum of `phi` over the infinite set `C_v` for
//! every vertex. [`check_trace`] verifies this to a finite depth, using a
//! closed-form tail when the candidate supplies one. [`alpha_from_phi`]
//! recovers the weights on the even vertices of the full diagram.

pub mod candidate;
pub mod check;
pub mod vertex;

pub use candidate::{CandidateSpec, Geometric, LabelKeyed, Table, Tail, TraceCandidate};
pub use check::{
    alpha_from_phi, alpha_table, check_trace, AlphaTable, TailReport, TraceVerdict, VertexVerdict, TRACE_DEPTH_LIMIT,
};
pub use vertex::{cf_move_l, cf_move_r, cf_of_vertex, in_neighbor_set, neighbor_labels_cf, neighbor_set, TVertex};
