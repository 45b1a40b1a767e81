//! Toric border bases for zero-dimensional ideals of Laurent polynomials.
//!
//! The engine works directly in `k[x₁^±1, …, xₙ^±1]`: monomials are graded by
//! the L1 degree `δ`, the normal-form set `B` is a union of cone differences,
//! and a rewriting family is certified by the commutation relations
//! `X_i X_j = X_j X_i` together with the inversion relations `X_i X_{-i} = Id`.

pub mod choice;
pub mod criteria;
pub mod error;
pub mod generate;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod projection;
pub mod quotient;
pub mod region;
pub mod scalar;
pub mod solver;
pub mod syzygy;

pub use choice::ChoiceFunction;
pub use error::{Error, Result};
pub use monomial::{var_indices, Monomial, VarIndex};
pub use parse::{parse_poly, parse_system, System};
pub use poly::LaurentPoly;
pub use projection::{Projection, RewriteRule};
pub use quotient::Quotient;
pub use region::MonomialRegion;
pub use scalar::{Field, Scalar};
pub use solver::{run, Outcome, SolverConfig, SolverResult};
