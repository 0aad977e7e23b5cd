//! Weighted arithmetic, harmonic, geometric and harmonic-Heinz means of
//! positive definite matrices.
//!
//! Every result is re-symmetrized and certified positive definite before it is
//! returned. Each mean returns `A` itself when `A == B` or `t = 0`, and `B`
//! itself at `t = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, PDMatrix};
use crate::scalar_means::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeanKind {
    Arithmetic,
    Harmonic,
    Geometric,
    HarmonicHeinz,
}

impl MeanKind {
    pub const ALL: [MeanKind; 4] = [
        MeanKind::Arithmetic,
        MeanKind::Harmonic,
        MeanKind::Geometric,
        MeanKind::HarmonicHeinz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Harmonic => "harmonic",
            MeanKind::Geometric => "geometric",
            MeanKind::HarmonicHeinz => "harmonic-heinz",
        }
    }

    pub fn apply(self, a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
        match self {
            MeanKind::Arithmetic => m_arithmetic(a, b, t),
            MeanKind::Harmonic => m_harmonic(a, b, t),
            MeanKind::Geometric => m_geometric(a, b, t),
            MeanKind::HarmonicHeinz => m_harmonic_heinz(a, b, t),
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        MeanKind::ALL
            .into_iter()
            .find(|k| k.as_str() == key)
            .ok_or_else(|| Error::domain(format!("unknown matrix mean {s:?}")))
    }
}

fn same_dim(a: &PDMatrix, b: &PDMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: (a.dim(), a.dim()),
            right: (b.dim(), b.dim()),
        });
    }
    Ok(())
}

// Shortcut shared by all means: Some(result) when the answer is one operand.
fn trivial(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<Option<PDMatrix>> {
    same_dim(a, b)?;
    if t.value() == 0.0 || a.matrix() == b.matrix() {
        return Ok(Some(a.clone()));
    }
    if t.value() == 1.0 {
        return Ok(Some(b.clone()));
    }
    Ok(None)
}

/// `(1-t)A + tB` without the shortcut or certification.
pub(crate) fn arithmetic_hermitian(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<HermitianMatrix> {
    a.hermitian().combine(1.0 - t.value(), b.hermitian(), t.value())
}

/// `(1-t)A + tB`
pub fn m_arithmetic(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
    if let Some(m) = trivial(a, b, t)? {
        return Ok(m);
    }
    PDMatrix::new(arithmetic_hermitian(a, b, t)?)
}

// (wa A^{-1} + wb B^{-1})^{-1}; swapping (a, wa) with (b, wb) gives the same bits.
fn harmonic_weights(a_inv: &PDMatrix, b_inv: &PDMatrix, wa: f64, wb: f64) -> Result<PDMatrix> {
    let sum = PDMatrix::new(a_inv.hermitian().combine(wa, b_inv.hermitian(), wb)?)?;
    Ok(sum.inverse())
}

/// `((1-t)A^{-1} + tB^{-1})^{-1}`
pub fn m_harmonic(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
    if let Some(m) = trivial(a, b, t)? {
        return Ok(m);
    }
    harmonic_weights(&a.inverse(), &b.inverse(), 1.0 - t.value(), t.value())
}

/// `A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`
pub fn m_geometric(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
    if let Some(m) = trivial(a, b, t)? {
        return Ok(m);
    }
    let half = a.power(0.5)?;
    let inv_half = a.power(-0.5)?;
    let inner = inv_half.matrix().matmul(b.matrix())?.matmul(inv_half.matrix())?;
    let inner = PDMatrix::new(HermitianMatrix::symmetrize(&inner)?)?.power(t.value())?;
    let out = half.matrix().matmul(inner.matrix())?.matmul(half.matrix())?;
    PDMatrix::new(HermitianMatrix::symmetrize(&out)?)
}

/// `(A !_t B + A !_{1-t} B) / 2`.
///
/// Both terms are built from `r = min(t, 1-t)`, so `t` and `1 - t` give
/// identical results whenever `1 - t` is exactly representable.
pub fn m_harmonic_heinz(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
    same_dim(a, b)?;
    if a.matrix() == b.matrix() {
        return Ok(a.clone());
    }
    let r = t.value().min(1.0 - t.value());
    let big_r = 1.0 - r;
    let (a_inv, b_inv) = (a.inverse(), b.inverse());
    let first = harmonic_weights(&a_inv, &b_inv, big_r, r)?;
    let second = harmonic_weights(&a_inv, &b_inv, r, big_r)?;
    PDMatrix::new(first.hermitian().combine(0.5, second.hermitian(), 0.5)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> PDMatrix {
        PDMatrix::diag(v).unwrap()
    }

    fn w(t: f64) -> Weight {
        Weight::new(t).unwrap()
    }

    fn assert_diag(m: &PDMatrix, expected: &[f64], rel: f64) {
        let want = HermitianMatrix::diag(expected);
        let err = m.hermitian().try_sub(&want).unwrap().hs_norm();
        assert!(err <= rel * want.hs_norm(), "{m:?} vs {expected:?}");
    }

    #[test]
    fn arithmetic_examples() {
        let a = diag(&[1.0, 2.0]);
        assert_eq!(m_arithmetic(&a, &a, w(0.3)).unwrap().matrix(), a.matrix());
        assert_diag(&m_arithmetic(&a, &diag(&[4.0, 8.0]), w(0.25)).unwrap(), &[1.75, 3.5], 1e-15);
        let i = PDMatrix::identity(2);
        assert_diag(&m_arithmetic(&i, &i.scaled(4.0).unwrap(), w(0.5)).unwrap(), &[2.5, 2.5], 1e-15);
    }

    #[test]
    fn harmonic_examples() {
        let a = diag(&[1.0, 2.0]);
        assert_eq!(m_harmonic(&a, &a, w(0.7)).unwrap().matrix(), a.matrix());
        assert_diag(&m_harmonic(&a, &diag(&[4.0, 8.0]), w(0.25)).unwrap(), &[16.0 / 13.0, 32.0 / 13.0], 1e-14);
        let i = PDMatrix::identity(3);
        assert_eq!(m_harmonic(&i, &i, w(0.0)).unwrap().matrix(), i.matrix());
    }

    #[test]
    fn geometric_examples() {
        let a = diag(&[1.0, 2.0]);
        assert_eq!(m_geometric(&a, &a, w(0.4)).unwrap().matrix(), a.matrix());
        let g = m_geometric(&PDMatrix::identity(2), &diag(&[4.0, 16.0]), w(0.5)).unwrap();
        assert_diag(&g, &[2.0, 4.0], 1e-14);
        let q = 4f64.powf(0.25);
        assert_diag(&m_geometric(&a, &diag(&[4.0, 8.0]), w(0.25)).unwrap(), &[q, 2.0 * q], 1e-14);
    }

    #[test]
    fn harmonic_heinz_examples() {
        let a = diag(&[1.0, 2.0]);
        assert_eq!(m_harmonic_heinz(&a, &a, w(0.2)).unwrap().matrix(), a.matrix());
        let i = PDMatrix::identity(2);
        let hh = m_harmonic_heinz(&i, &i.scaled(4.0).unwrap(), w(0.25)).unwrap();
        assert_diag(&hh, &[160.0 / 91.0, 160.0 / 91.0], 1e-14);
        let hh = m_harmonic_heinz(&i, &diag(&[4.0, 9.0]), w(0.25)).unwrap();
        assert_diag(&hh, &[160.0 / 91.0, 15.0 / 7.0], 1e-14);
    }

    #[test]
    fn harmonic_heinz_is_exactly_symmetric_in_t() {
        let a = diag(&[1.0, 3.0]);
        let b = diag(&[5.0, 2.0]);
        let x = m_harmonic_heinz(&a, &b, w(0.25)).unwrap();
        let y = m_harmonic_heinz(&a, &b, w(0.75)).unwrap();
        assert_eq!(x.matrix(), y.matrix());
    }

    #[test]
    fn dimension_mismatch() {
        let a = PDMatrix::identity(2);
        let b = PDMatrix::identity(3);
        for kind in MeanKind::ALL {
            assert!(matches!(kind.apply(&a, &b, w(0.5)), Err(Error::DimensionMismatch { .. })));
        }
    }

    #[test]
    fn kind_names() {
        for kind in MeanKind::ALL {
            assert_eq!(kind.as_str().parse::<MeanKind>().unwrap(), kind);
        }
        assert_eq!("HARMONIC_HEINZ".parse::<MeanKind>().unwrap(), MeanKind::HarmonicHeinz);
        assert!("power".parse::<MeanKind>().is_err());
    }
}
