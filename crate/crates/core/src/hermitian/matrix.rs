use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::c64;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("matrix entries".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::default(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c64(1.0);
        }
        m
    }

    pub fn from_real_diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = c64(*v);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        ComplexMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.shape(), right: other.shape() });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::default() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += aik * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| f(*x, *y)).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    /// `alpha * self + beta * other`
    pub fn combine(&self, alpha: f64, other: &ComplexMatrix, beta: f64) -> Result<Self> {
        self.zip_with(other, |x, y| x * alpha + y * beta)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    pub fn hs_norm(&self) -> f64 {
        hs_norm(self)
    }

    pub fn trace(&self) -> Result<Complex64> {
        trace(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == Complex64::default())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>11.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `sqrt(sum |x_ij|^2)`, accumulated with scaling so huge or tiny entries do
/// not overflow.
pub fn hs_norm(x: &ComplexMatrix) -> f64 {
    let scale = x.data.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = x.data.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * sum.sqrt()
}

pub fn trace(x: &ComplexMatrix) -> Result<Complex64> {
    if !x.is_square() {
        return Err(Error::NotSquare { rows: x.rows, cols: x.cols });
    }
    Ok((0..x.rows).map(|i| x.get(i, i)).sum())
}

/// Square matrix with `a_ij = conj(a_ji)` and a real diagonal, by construction.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Build from the upper triangle of `m`; the lower triangle is ignored and
    /// mirrored, diagonal imaginary parts are dropped.
    pub fn from_upper(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        let n = m.rows;
        let mut out = m.clone();
        for i in 0..n {
            out.set(i, i, c64(m.get(i, i).re));
            for j in i + 1..n {
                out.set(j, i, m.get(i, j).conj());
            }
        }
        Ok(HermitianMatrix { inner: out })
    }

    /// `(M + M*) / 2`.
    pub fn symmetrize(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        let n = m.rows;
        let mut out = m.clone();
        for i in 0..n {
            out.set(i, i, c64(m.get(i, i).re));
            for j in i + 1..n {
                let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                out.set(i, j, z);
                out.set(j, i, z.conj());
            }
        }
        Ok(HermitianMatrix { inner: out })
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix { inner: ComplexMatrix::identity(n) }
    }

    pub fn diag(values: &[f64]) -> Self {
        HermitianMatrix { inner: ComplexMatrix::from_real_diag(values) }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner.get(i, j)
    }

    pub fn hs_norm(&self) -> f64 {
        self.inner.hs_norm()
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.inner.get(i, i).re).sum()
    }

    pub fn scale(&self, alpha: f64) -> Self {
        HermitianMatrix { inner: self.inner.scale(alpha) }
    }

    pub fn try_add(&self, other: &HermitianMatrix) -> Result<Self> {
        Ok(HermitianMatrix { inner: self.inner.try_add(&other.inner)? })
    }

    pub fn try_sub(&self, other: &HermitianMatrix) -> Result<Self> {
        Ok(HermitianMatrix { inner: self.inner.try_sub(&other.inner)? })
    }

    /// `alpha * self + beta * other`, still Hermitian for real weights.
    pub fn combine(&self, alpha: f64, other: &HermitianMatrix, beta: f64) -> Result<Self> {
        Ok(HermitianMatrix { inner: self.inner.combine(alpha, &other.inner, beta)? })
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.inner)
    }
}
