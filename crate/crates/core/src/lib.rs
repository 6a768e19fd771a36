//! Exact-arithmetic toolkit for finite-dimensional Leibniz superalgebras
//! given by structure constants.
//!
//! The core is generic over a [`Scalar`] field type; the toolkit itself
//! runs everything over the arbitrary-precision rationals [`Rat`], which is
//! what the concrete aliases below pin down. Computations over `Rat` are
//! exact: subspace equality, identity checks and invariants carry no
//! tolerances.

pub mod algebra;
pub mod basis_change;
pub mod families;
pub mod fileformat;
pub mod invariants;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod subspace;
pub mod verify;

pub use algebra::{Element, IdentityKind, IdentityReport, Nilindex, SuperAlgebra};
pub use invariants::CharSeq;
pub use scalar::{rat, ratio, Rat, Scalar};

/// Exact rational matrix.
pub type RatMatrix = linalg::Matrix<Rat>;
/// Exact rational superalgebra, the toolkit's working type.
pub type RatSuperAlgebra = SuperAlgebra<Rat>;
/// Exact rational graded subspace.
pub type RatSubspace = subspace::Subspace<Rat>;
/// Exact rational element.
pub type RatElement = Element<Rat>;
