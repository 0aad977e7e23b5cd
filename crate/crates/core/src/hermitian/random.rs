//! Seeded random instances: unitaries, PD matrices, commuting and ordered pairs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, HermitianMatrix};
use super::PDMatrix;

/// Real-symmetric or complex-Hermitian samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Real,
    Complex,
}

/// A seed plus the ChaCha8 stream it generates. States are split with
/// [`RngState::child`], never shared between trials.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent state for `(label, index)`; depends only on the parent seed.
    pub fn child(&self, label: &str, index: u64) -> RngState {
        let s = splitmix64(self.seed ^ splitmix64(fnv1a(label) ^ splitmix64(index)));
        RngState::new(s)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    fn entry(&mut self, ensemble: Ensemble) -> Complex64 {
        match ensemble {
            Ensemble::Real => Complex64::new(self.normal(), 0.0),
            Ensemble::Complex => Complex64::new(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

/// Gaussian `rows x cols` matrix.
pub fn random_matrix(rows: usize, cols: usize, ensemble: Ensemble, rng: &mut RngState) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..rows * cols).map(|_| rng.entry(ensemble)).collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian sample")
}

/// Gaussian Hermitian matrix `(G + G*)/2`.
pub fn random_hermitian(dim: usize, ensemble: Ensemble, rng: &mut RngState) -> HermitianMatrix {
    HermitianMatrix::symmetrize(&random_matrix(dim, dim, ensemble, rng)).expect("square")
}

/// Haar-distributed unitary (orthogonal for the real ensemble) from a
/// modified Gram-Schmidt QR of a Gaussian matrix.
pub fn random_unitary(dim: usize, ensemble: Ensemble, rng: &mut RngState) -> ComplexMatrix {
    loop {
        let g = random_matrix(dim, dim, ensemble, rng);
        let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| (0..dim).map(|i| g.get(i, j)).collect()).collect();
        let mut ok = true;
        for j in 0..dim {
            for k in 0..j {
                let proj: Complex64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..dim {
                    let qk = cols[k][i];
                    cols[j][i] -= proj * qk;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|z| *z /= norm);
        }
        if ok {
            return ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i]);
        }
    }
}

fn check_args(dim: usize, cond_max: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::Config("dimension must be at least 1".into()));
    }
    if !(cond_max >= 1.0 && cond_max.is_finite()) {
        return Err(Error::Config(format!("cond_max = {cond_max} must be finite and >= 1")));
    }
    Ok(())
}

fn spectrum(dim: usize, cond_max: f64, rng: &mut RngState) -> Vec<f64> {
    let half = 0.5 * cond_max.ln();
    (0..dim).map(|_| rng.uniform(-half, half).exp()).collect()
}

/// `Q diag(lambda) Q*` with `Q` Haar and `lambda` log-uniform in
/// `[1/sqrt(cond_max), sqrt(cond_max)]`. `cond_max = 1` gives the identity.
pub fn random_pd(dim: usize, cond_max: f64, ensemble: Ensemble, rng: &mut RngState) -> Result<PDMatrix> {
    check_args(dim, cond_max)?;
    if cond_max == 1.0 {
        return Ok(PDMatrix::identity(dim));
    }
    let q = random_unitary(dim, ensemble, rng);
    PDMatrix::from_spectrum(q, spectrum(dim, cond_max, rng))
}

/// Two PD matrices sharing one eigenbasis, so they commute exactly up to the
/// rounding of the assembly.
pub fn random_commuting_pair(
    dim: usize,
    cond_max: f64,
    ensemble: Ensemble,
    rng: &mut RngState,
) -> Result<(PDMatrix, PDMatrix)> {
    check_args(dim, cond_max)?;
    let q = random_unitary(dim, ensemble, rng);
    let a = PDMatrix::from_spectrum(q.clone(), spectrum(dim, cond_max, rng))?;
    let b = PDMatrix::from_spectrum(q, spectrum(dim, cond_max, rng))?;
    Ok((a, b))
}

/// A Löwner-comparable pair: one side is `A`, the other `A + P` with `P` PD.
/// Which side is larger is chosen at random. With `commuting` the
/// perturbation shares the eigenbasis of `A`.
pub fn random_ordered_pair(
    dim: usize,
    cond_max: f64,
    ensemble: Ensemble,
    commuting: bool,
    rng: &mut RngState,
) -> Result<(PDMatrix, PDMatrix)> {
    check_args(dim, cond_max)?;
    let q = random_unitary(dim, ensemble, rng);
    let la = spectrum(dim, cond_max, rng);
    let size = rng.log_uniform(1e-2, 1.0) * la.iter().cloned().fold(0.0, f64::max);
    let a = PDMatrix::from_spectrum(q.clone(), la.clone())?;
    let bigger = if commuting {
        let lb = la.iter().map(|l| l + size * rng.uniform(0.05, 1.0)).collect();
        PDMatrix::from_spectrum(q, lb)?
    } else {
        let p = random_pd(dim, cond_max.max(2.0), ensemble, rng)?;
        let scale = size / p.max_eigenvalue();
        let sum = a.hermitian().combine(1.0, p.hermitian(), scale)?;
        PDMatrix::new(sum)?
    };
    Ok(if rng.coin() { (a, bigger) } else { (bigger, a) })
}
