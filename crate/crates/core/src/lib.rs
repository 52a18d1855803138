//! Exact construction of Macdonald-Koornwinder polynomials through an
//! explicit branching rule, together with verifiers for the identities that
//! tie the construction to the Pieri and Cauchy expansions.
//!
//! Everything is exact over ℚ (with a quadratic extension for the hatted
//! parameters) except the torus-quadrature orthogonality oracle in
//! [`verify`].

pub mod branching;
pub mod error;
pub mod field;
pub mod interp;
pub mod laurent;
pub mod partitions;
pub mod pieri;
pub mod verify;

pub use branching::{
    askey_wilson, branching_coeffs, branching_poly, compute_mk, compute_mk_via_chains, BranchingCoeffs, MkBuilder,
};
pub use error::{Error, Result};
pub use field::{FieldElement, ParameterPoint, Rational};
pub use laurent::LaurentPoly;
pub use partitions::Partition;
pub use pieri::{pieri_coeff, PieriCache};
