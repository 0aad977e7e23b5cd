//! Scalar and matrix means (arithmetic, harmonic, geometric, Heinz,
//! harmonic-Heinz, Heron, Heron-harmonic) and numerical certification of the
//! refinement and reverse inequalities between them.
//!
//! Every check returns an [`InequalityVerdict`] carrying both sides, the signed
//! margin and the tolerance it was judged against. The [`suite`] module runs
//! checks over seeded random instances.

pub mod error;
pub mod hermitian;
pub mod matrix_inequalities;
pub mod matrix_means;
pub mod scalar_inequalities;
pub mod scalar_means;
pub mod suite;
pub mod verdict;

pub use error::{Error, Result};
pub use hermitian::{ComplexMatrix, HermitianMatrix, PDMatrix, RngState, SpectralDecomposition};
pub use scalar_means::{PositivePair, Weight};
pub use verdict::{Direction, InequalityVerdict};

/// Default relative tolerance for scalar checks.
pub const SCALAR_TOL: f64 = 1e-10;

/// Default relative tolerance for matrix checks.
pub const MATRIX_TOL: f64 = 1e-9;
