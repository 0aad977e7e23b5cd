//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::c64;
use super::matrix::{ComplexMatrix, HermitianMatrix};

/// Stop once the off-diagonal HS norm is below this fraction of `||A||_HS`.
const OFF_TOL: f64 = 1e-14;

/// `A = U diag(eigenvalues) U*` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub unitary: ComplexMatrix,
    pub eigenvalues: Vec<f64>,
}

impl SpectralDecomposition {
    /// Pair a unitary with eigenvalues, sorting both into ascending order.
    pub fn new(unitary: ComplexMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        if unitary.shape() != (n, n) {
            return Err(Error::DimensionMismatch { left: unitary.shape(), right: (n, n) });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eigenvalues[i].total_cmp(&eigenvalues[j]));
        if order.iter().enumerate().all(|(k, &i)| k == i) {
            return Ok(SpectralDecomposition { unitary, eigenvalues });
        }
        let unitary = ComplexMatrix::from_fn(n, n, |r, c| unitary.get(r, order[c]));
        let eigenvalues = order.iter().map(|&i| eigenvalues[i]).collect();
        Ok(SpectralDecomposition { unitary, eigenvalues })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `U diag(f(lambda)) U*`, symmetrized.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "function undefined at eigenvalue {}",
                self.eigenvalues[pos]
            )));
        }
        Ok(self.assemble(&values))
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.assemble(&self.eigenvalues)
    }

    fn assemble(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.dim();
        let u = &self.unitary;
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u.get(i, k) * u.get(j, k).conj() * values[k]).sum()
        });
        HermitianMatrix::symmetrize(&m).expect("square by construction")
    }
}

fn off_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition by cyclic Jacobi sweeps.
///
/// Each rotation first removes the phase of `a_pq` and then applies the real
/// symmetric Schur rotation, i.e. `U2 = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]`
/// with `a_pq = |a_pq| e^{i phi}`.
pub fn eigh(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut m: Vec<Complex64> = a.as_matrix().data().to_vec();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).data().to_vec();
    let scale = a.hs_norm();
    let target = OFF_TOL * scale;
    let budget = 30 * n * n;

    let mut sweeps = 0;
    while off_norm(&m, n) > target {
        if sweeps == budget {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let u00 = c64(c);
                let u01 = c64(s);
                let u10 = -phase.conj() * s;
                let u11 = phase.conj() * c;

                // columns: M <- M U2
                for k in 0..n {
                    let (xp, xq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = xp * u00 + xq * u10;
                    m[k * n + q] = xp * u01 + xq * u11;
                    let (yp, yq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = yp * u00 + yq * u10;
                    v[k * n + q] = yp * u01 + yq * u11;
                }
                // rows: M <- U2* M
                for k in 0..n {
                    let (xp, xq) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = u00.conj() * xp + u10.conj() * xq;
                    m[q * n + k] = u01.conj() * xp + u11.conj() * xq;
                }
                m[p * n + q] = Complex64::default();
                m[q * n + p] = Complex64::default();
                m[p * n + p] = c64(m[p * n + p].re);
                m[q * n + q] = c64(m[q * n + q].re);
            }
        }
        if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NoConvergence { sweeps });
        }
    }

    let eigenvalues = (0..n).map(|i| m[i * n + i].re).collect();
    let unitary = ComplexMatrix::new(n, n, v).map_err(|_| Error::NoConvergence { sweeps })?;
    SpectralDecomposition::new(unitary, eigenvalues)
}
