//! The ordered group `K_0` of the codimension-one ideal, modelled on
//! symmetric Laurent polynomials in `Z[X + X^{-1}]` with connecting maps
//! `p(X) -> (X^{-1} + 1 + X) p(X^2)`.

pub mod identities;
pub mod laurent;
pub mod poly;

pub use identities::{
    eval_phi, phi_partition_sum, q_prime, rho_n, stern_brocot_generating, verify_unit_decomposition, UnitVerdict,
};
pub use laurent::SymLaurent;
pub use poly::LevelPoly;
