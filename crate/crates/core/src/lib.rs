//! Numerical and exact calculus of slice functions over the division
//! algebras C, H and O.
//!
//! The crate provides Cayley-Dickson arithmetic with exact-rational and
//! double coefficient modes, star polynomials and semiregular quotients,
//! slice-function evaluation from spherical value and derivative, zero-set
//! classification, reciprocals and the sphere transformation attached to
//! them, modulus extrema and open-mapping probes, and Laurent-type
//! coefficient extraction with singularity classification.

pub mod algebra;
pub mod error;
pub mod json;
pub mod modulus;
pub mod poly;
pub mod reciprocal;
pub mod sampling;
pub mod singularities;
pub mod slice;
pub mod scalar;
pub mod zeros;

pub use algebra::{Algebra, Element, SphereDecomposition};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar type (the oracle mode).
pub type Rational = num::BigRational;
