//! Crate-wide error type.

use thiserror::Error;

use crate::algebra::Algebra;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    AlgebraMismatch { left: Algebra, right: Algebra },
    #[error("zero has no multiplicative inverse")]
    ZeroNotInvertible,
    #[error("element is not an imaginary unit")]
    NotImaginaryUnit,
    #[error("value is irrational in exact mode: {0}")]
    IrrationalValue(&'static str),
    #[error("point is outside the function domain")]
    OutOfDomain,
    #[error("evaluation too close to a pole")]
    PoleProximity,
    #[error("spherical derivative unavailable at a real point")]
    RealPointDerivative,
    #[error("domains do not intersect")]
    EmptyDomainIntersection,
    #[error("grid too small: need at least 3x3 samples")]
    GridTooSmall,
    #[error("point is outside the series annulus")]
    OutOfAnnulus,
    #[error("phi denominator vanishes")]
    PhiUndefined,
    #[error("normal function is identically zero")]
    NormalIdenticallyZero,
    #[error("spherical derivative vanishes on this sphere")]
    SphericalDerivativeVanishes,
    #[error("zero-class case disagrees with recomputation")]
    CaseMismatch,
    #[error("integration contour passes through a singularity")]
    ContourThroughSingularity,
    #[error("coefficient window did not converge")]
    NonConvergentWindow,
    #[error("probe inconclusive: {0}")]
    ProbeInconclusive(String),
    #[error("boundary modulus is degenerate (zero on the boundary)")]
    DegenerateEpsilon,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
