use thiserror::Error;

/// Errors raised by the polyhedral and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("polyhedron is unbounded; supply an enumeration window")]
    Unbounded,
    #[error("polytope has a non-integral vertex")]
    NotLattice,
    #[error("fans have different supports")]
    SupportMismatch,
    #[error("{n} distinct weights exceed the subset enumeration cap of {cap}")]
    SubsetCapExceeded { n: usize, cap: usize },
    #[error("weight lies outside the weight cone")]
    WeightOutsideCone,
    #[error("polyhedra have different tail cones")]
    TailConeMismatch,
    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("normal fan of the first polyhedron does not refine that of the second")]
    RefinementRequired,
    #[error("lattice map is not surjective")]
    NotSurjective,
    #[error("tail cone is not contained in the non-negative orthant")]
    TailOutsideOrthant,
    #[error("internal consistency check failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
