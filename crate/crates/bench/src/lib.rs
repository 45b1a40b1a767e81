//! Benchmark fixtures shared by the criterion targets.

use tbb_core::generate::{generic_system, random_sparse_system};
use tbb_core::{Field, LaurentPoly};

/// Two generic bivariate polynomials on the degree-2 diamond.
pub fn diamond(seed: u64) -> Vec<LaurentPoly> {
    generic_system(2, 2, Field::GF32003, seed)
}

/// Three generic trivariate polynomials on the unit cross-polytope.
pub fn cross3(seed: u64) -> Vec<LaurentPoly> {
    generic_system(3, 1, Field::GF32003, seed)
}

/// Sparse bivariate inputs like the ones the oracle is checked on.
pub fn sparse2(seed: u64) -> Vec<LaurentPoly> {
    random_sparse_system(2, 2, 2, 0.5, Field::GF32003, seed)
}
