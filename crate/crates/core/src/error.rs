//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the exact-arithmetic operations.
///
/// Each variant corresponds to a documented failure mode of some operation; no
/// operation in the crate panics on mathematically meaningful input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion of a truncated series with zero constant term.
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    /// A q-Pochhammer factor with negative index is singular, or a scalar division by zero.
    #[error("division by zero in an exact scalar expression")]
    DivisionByZero,
    /// `q_pochhammer_inf` called with a q of grading valuation 0.
    #[error("infinite q-Pochhammer product does not terminate: valuation(q) = 0")]
    DivergentProduct,
    /// A q-multinomial ratio with two or more negative bottom indices.
    #[error("q-multinomial ratio with more than one negative bottom index")]
    BadSignature,
    /// A parameter denominator such as (a/b;q)_J vanished at the given specialization.
    #[error("singular denominator in a vertex weight or transfer-matrix element")]
    SingularDenominator,
    /// A parameter sequence was indexed past its stored prefix.
    #[error("parameter sequence prefix too short: index {0} requested")]
    PrefixTooShort(usize),
    /// Grid/partition index out of the valid range.
    #[error("index out of range: {0}")]
    OutOfRange(String),
    /// A grid table does not extend deep enough for the requested partition.
    #[error("grid depth too shallow: need column {needed}, have {depth}")]
    DepthTooShallow { needed: usize, depth: usize },
    /// The interpolation (or transition) linear system is singular.
    #[error("singular linear system: degenerate grid or parameter draw")]
    SingularSystem,
    /// A term map fed to SymPoly is not invariant under variable permutations.
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    /// Top-component of the zero polynomial requested.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// Malformed user input (CLI / JSON).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
