//! Ideals of the AF algebra through their Bratteli subdiagrams.
//!
//! A point `theta` of `[0,1]` determines a primitive ideal `I_theta`, and a
//! rational point also the one-sided ideals `I_theta^+`, `I_theta^-`. Their
//! quotient diagrams are computed floor by floor from exact comparisons of
//! `theta` with the labels; irrational points are given by partial
//! quotients, never by floating point.

pub mod admissible;
pub mod export;
pub mod level_set;
pub mod levels;
pub mod theta;
pub mod topology;

pub use admissible::{classify_admissible, count_admissible, enumerate_admissible, Admissible, Tag};
pub use export::to_dot;
pub use level_set::{FloorSet, LevelSet, LevelSetJson};
pub use levels::{has_common_descendants, ideal_levels, is_directed, is_hereditary, quotient_levels, Tri};
pub use theta::{descend, CfSource, IdealSpec, Theta, Variant};
pub use topology::{
    column_bound_violations, convergence_check, convergent_labels, gap_bound_violations, ideal_contains,
    ideal_sum, kernel_intersection, parents_of, ConvergenceVerdict, ParentPair,
};
