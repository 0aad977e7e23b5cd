//! Dense complex Hermitian linear algebra for small dimensions.

mod eigen;
mod fixture;
mod matrix;
mod random;

pub use eigen::{eigh, SpectralDecomposition};
pub use fixture::Fixture;
pub use matrix::{hs_norm, trace, ComplexMatrix, HermitianMatrix};
pub use random::{
    random_commuting_pair, random_hermitian, random_matrix, random_ordered_pair, random_pd,
    random_unitary, Ensemble, RngState,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::verdict::{Direction, InequalityVerdict};

/// Relative threshold for accepting a Hermitian matrix as positive definite:
/// `lambda_min > PD_THRESHOLD * (1 + ||A||_HS)`.
pub const PD_THRESHOLD: f64 = 1e-12;

/// A Hermitian matrix with strictly positive spectrum. The spectral
/// decomposition is computed once and kept.
#[derive(Debug, Clone)]
pub struct PDMatrix {
    matrix: HermitianMatrix,
    spectrum: SpectralDecomposition,
}

impl PDMatrix {
    /// Certify `a` as positive definite.
    pub fn new(a: HermitianMatrix) -> Result<Self> {
        let spectrum = eigh(&a)?;
        let threshold = PD_THRESHOLD * (1.0 + a.hs_norm());
        let min = spectrum.min_eigenvalue();
        if min <= threshold {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min, threshold });
        }
        Ok(PDMatrix { matrix: a, spectrum })
    }

    /// Assemble `U diag(eigenvalues) U*` from a known spectrum. `unitary` is
    /// trusted to be unitary; eigenvalues must be positive and finite.
    pub fn from_spectrum(unitary: ComplexMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = eigenvalues.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: bad, threshold: 0.0 });
        }
        let spectrum = SpectralDecomposition::new(unitary, eigenvalues)?;
        let matrix = spectrum.reconstruct();
        Ok(PDMatrix { matrix, spectrum })
    }

    pub fn identity(dim: usize) -> Self {
        PDMatrix::from_spectrum(ComplexMatrix::identity(dim), vec![1.0; dim]).expect("identity is PD")
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        PDMatrix::from_spectrum(ComplexMatrix::identity(values.len()), values.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.as_matrix()
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.min_eigenvalue()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.spectrum.max_eigenvalue()
    }

    pub fn hs_norm(&self) -> f64 {
        self.matrix.hs_norm()
    }

    pub fn power(&self, s: f64) -> Result<PDMatrix> {
        pd_power(self, s)
    }

    pub fn inverse(&self) -> PDMatrix {
        pd_power(self, -1.0).expect("inverse of a PD matrix")
    }

    pub fn scaled(&self, lambda: f64) -> Result<PDMatrix> {
        let values = self.eigenvalues().iter().map(|l| lambda * l).collect();
        PDMatrix::from_spectrum(self.spectrum.unitary.clone(), values)
    }
}

/// `U diag(f(lambda_i)) U*`.
pub fn spectral_map(a: &PDMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    a.spectrum.map(f)
}

/// `A^s` through the cached spectrum.
pub fn pd_power(a: &PDMatrix, s: f64) -> Result<PDMatrix> {
    if !s.is_finite() {
        return Err(Error::domain(format!("exponent {s} is not finite")));
    }
    let values = a.eigenvalues().iter().map(|l| l.powf(s)).collect();
    PDMatrix::from_spectrum(a.spectrum.unitary.clone(), values)
}

/// `(det A)^{p/n}` from the eigenvalue log-sum.
pub fn det_nth_root(a: &PDMatrix, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("exponent {p} must be positive")));
    }
    let n = a.dim() as f64;
    let log_sum: f64 = a.eigenvalues().iter().map(|l| l.ln()).sum();
    Ok((p / n * log_sum).exp())
}

/// `(det A)^{p/n}` for a matrix that is positive semidefinite up to
/// `threshold`: eigenvalues in `[-threshold, 0]` are clamped to 0, anything
/// more negative is an error.
pub fn psd_det_nth_root(a: &HermitianMatrix, p: f64, threshold: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("exponent {p} must be positive")));
    }
    let spectrum = eigh(a)?;
    let min = spectrum.min_eigenvalue();
    if min < -threshold {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    let n = a.dim() as f64;
    let log_sum: f64 = spectrum.eigenvalues.iter().map(|l| l.max(0.0).ln()).sum();
    Ok((p / n * log_sum).exp())
}

/// `A <= B` in Löwner order. `lhs`/`rhs` of the verdict are `||A||_HS` and
/// `||B||_HS`; the margin is `lambda_min(B - A)`, judged against
/// `tol_rel (1 + ||A||_HS + ||B||_HS)`.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol_rel: f64) -> Result<InequalityVerdict> {
    let diff = b.try_sub(a)?;
    let margin = eigh(&diff)?.min_eigenvalue();
    let (na, nb) = (a.hs_norm(), b.hs_norm());
    InequalityVerdict::with_margin("LOEWNER", na, nb, Direction::Leq, margin, tol_rel * (1.0 + na + nb))
}

/// `||AB - BA||_HS`.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(a.matmul(b)?.try_sub(&b.matmul(a)?)?.hs_norm())
}

pub(crate) fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
