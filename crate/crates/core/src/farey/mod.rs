//! Labels of the Stern-Brocot / Farey diagram and the number theory around
//! them: continued fractions, Minkowski's question mark, the Farey map,
//! totient fibers and unimodular matrix words.

pub mod cf;
pub mod farey_map;
pub mod fraction;
pub mod matrix;
pub mod qmark;
pub mod totient;
pub mod tree;

pub use cf::{cf_decode, cf_encode, height, ContinuedFraction};
pub use farey_map::{farey_inverse_orbit, farey_map, farey_map_cf, farey_preimages};
pub use fraction::Fraction;
pub use matrix::{matrix_to_vertex, vertex_to_matrix, verify_matrix_words, UnimodularMatrix};
pub use qmark::{first_vertex, question_mark, question_mark_inv, question_mark_of};
pub use totient::{partition_function, totient_fiber, totient_sieve};
pub use tree::{children, label, row, TreeVertex};
