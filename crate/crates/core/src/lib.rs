//! Exact computations on the Stern-Brocot (Farey) Bratteli diagram.
//!
//! * [`farey`]: vertex labels, continued fractions, `?`, the Farey map.
//! * [`ideals`]: ideal and quotient subdiagrams, admissibility, containment.
//! * [`k0`]: the dimension group as Laurent polynomial arithmetic.
//! * [`trace`]: traces as weight functions on the memoryless tree.
//! * [`paths`]: the path model and its projection relations over `Q(sqrt(l))`.

pub mod error;
pub mod farey;
pub mod ideals;
pub mod k0;
pub mod paths;
pub mod trace;

pub use error::{Error, Result};
pub use farey::{Fraction, TreeVertex};
