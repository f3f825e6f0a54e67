use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Shapes or indices that do not fit together.
    Malformed,
    /// A mathematical hypothesis of the operation does not hold.
    Precondition,
    /// An invariant the library guarantees was violated. Always a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not in GL(n, Z): determinant {det}")]
    NotUnimodular { det: String },
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("invalid quadratic order parameter {0}: need d >= 2")]
    InvalidOrder(String),
    #[error("generator index {index} out of range ({count} generators)")]
    UnknownGenerator { index: usize, count: usize },
    #[error("module action violates relator #{index} ({relator})")]
    ViolatedRelator { index: usize, relator: String },
    #[error("values do not define a derivation: relator #{index} ({relator}) expands to a nonzero vector")]
    NotADerivation { index: usize, relator: String },
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("matrix is not D-equivariant")]
    NotEquivariant,
    #[error("elements belong to different groups")]
    ParentMismatch,
    #[error("Jacobi identity fails on (e{0}, e{1}, e{2})", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1)]
    Jacobi { triple: (usize, usize, usize) },
    #[error("structure constant index out of range or not i < j: ({i}, {j}, {k})")]
    BadStructureConstant { i: usize, j: usize, k: usize },
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("matrix does not preserve the Lie bracket")]
    NotAnAutomorphism,
    #[error("automorphism is not semisimple")]
    NotSemisimple,
    #[error("Lie algebra is not nilpotent")]
    NotNilpotentAlgebra,
    #[error("automorphisms do not commute")]
    NotCommuting,
    #[error("degree {degree} out of range for dimension {dim}")]
    Degree { degree: usize, dim: usize },
    #[error("{message}{}", if pointer.is_empty() { String::new() } else { format!(" (at {pointer})") })]
    Schema { pointer: String, message: String },
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Dimension(_)
            | Error::NotSquare { .. }
            | Error::UnknownGenerator { .. }
            | Error::BadStructureConstant { .. }
            | Error::Degree { .. }
            | Error::ParentMismatch
            | Error::Schema { .. }
            | Error::Parse(_) => ErrorKind::Malformed,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}
