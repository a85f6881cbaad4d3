//! The algebra acting on paths from the root to a fixed floor `N`.
//!
//! A path is the list of its horizontal coordinates. Operators are sparse
//! matrices indexed by paths, with coefficients in `Q(sqrt(lambda))`, and
//! only ever relate paths ending at the same vertex. On this space the
//! generators `e_n, f_n, g_n` are diagonal projections selecting the edge
//! type between floors `n-1` and `n`, while `v_n` and `w_n` flip a path
//! across a diamond. [`relations`] checks their defining relations and the
//! identities satisfied by the projections `E_n`, `F_n` exactly.

pub mod generators;
pub mod mutation;
pub mod operator;
pub mod path;
pub mod relations;
pub mod scalar;

pub use generators::{rational_sqrt, Algebra, Generator, TlKind};
pub use mutation::{gauge_removable, mutation_sites, new_failures, Site};
pub use operator::{Entry, SparseOperator};
pub use path::{enumerate_paths, Path, PathSpace, PATH_FLOOR_LIMIT};
pub use relations::{
    braiding_suite, default_grid, relation_suite, run_suite, yang_baxter, Check, Report, Status, Suite, Witness,
};
pub use scalar::QuadScalar;
