use thiserror::Error;

use crate::monomial::Monomial;

/// Errors raised by the toric border basis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("monomial {0} lies outside the domain of the projection")]
    OutsideDomain(Monomial),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("a rule with head {0} already exists")]
    DuplicateHead(Monomial),
    #[error("removing the cone of 1 would empty the region")]
    WouldEmptyRegion,
    #[error("monomial {0} not reached within {1} prolongations")]
    IterationBoundExceeded(Monomial, u32),
    #[error("monomial {0} is not in B")]
    NotInB(Monomial),
    #[error("indices must be distinct and nonzero, got ({0}, {1})")]
    BadIndices(i32, i32),
    #[error("syzygy reduction exceeded its iteration bound ({0})")]
    ReductionBound(usize),
    #[error("monomial {0} is not a column of the matrix")]
    UnknownMonomial(Monomial),
    #[error("degree {0} is too small for this check (need at least 2)")]
    DegreeTooSmall(u32),
    #[error("no input polynomials")]
    NoInput,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {0}: polynomial is zero")]
    ZeroPolynomialLine(usize),
    #[error("the quotient is infinite; multiplication matrices are undefined")]
    InfiniteQuotient,
    #[error("{0} is not a prime usable as a field characteristic")]
    NotPrime(u64),
    #[error("variable counts differ ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
