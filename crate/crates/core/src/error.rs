use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a face of dimension {expected}, found {face} of dimension {found}")]
    DimensionMismatch {
        expected: isize,
        found: isize,
        face: Simplex,
    },
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("repeated vertex {0} in a simplex")]
    DuplicateVertex(u32),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Simplex),
    #[error("face set is not closed under subsets: {missing} is missing")]
    NotClosed { missing: Simplex },
    #[error("complex is not sandwiched between the skeleta: {0}")]
    NotSandwiched(String),
    #[error("complex is not pure: maximal face {0} has dimension below the top")]
    NotPure(Simplex),
    #[error("matrix of size {size} exceeds the dense limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("link Betti sum must vanish, found lambda = {0}")]
    PreconditionLambdaNonzero(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid field specification {0:?} (expected gf:P or q)")]
    InvalidField(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
