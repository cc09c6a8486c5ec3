//! Dense complex matrices, just enough for Haar sampling and the block
//! density checks: products, adjoints, Gram-Schmidt QR and Cholesky.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Real matrix promoted to complex.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        CMatrix { rows, cols, data: values.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Rows `0..p`, columns `0..q`.
    pub fn upper_block(&self, p: usize, q: usize) -> Result<Self> {
        if p > self.rows || q > self.cols {
            return Err(Error::InvalidDimension("block larger than matrix"));
        }
        Ok(Self::from_fn(p, q, |i, j| self[(i, j)]))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    /// Thin QR by modified Gram-Schmidt with one re-orthogonalization pass.
    /// `R` has a positive real diagonal, which is exactly the normalization
    /// that makes `Q` Haar distributed when the input is complex Gaussian.
    /// Returns `None` if a column is (numerically) dependent on earlier ones.
    pub fn qr_positive(&self) -> Option<(CMatrix, CMatrix)> {
        let (m, n) = (self.rows, self.cols);
        let mut q = self.clone();
        let mut r = Self::zeros(n, n);
        for j in 0..n {
            for _pass in 0..2 {
                for i in 0..j {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for row in 0..m {
                        dot += q[(row, i)].conj() * q[(row, j)];
                    }
                    r[(i, j)] += dot;
                    for row in 0..m {
                        let qi = q[(row, i)];
                        q[(row, j)] -= dot * qi;
                    }
                }
            }
            let norm = libm::sqrt((0..m).map(|row| q[(row, j)].norm_sqr()).sum::<f64>());
            if norm < 1e-12 {
                return None;
            }
            r[(j, j)] = Complex64::new(norm, 0.0);
            for row in 0..m {
                q[(row, j)] /= norm;
            }
        }
        Some((q, r))
    }

    /// Lower-triangular `L` with `L L* = self`; fails unless the matrix is
    /// Hermitian positive definite.
    pub fn cholesky(&self) -> Result<CMatrix> {
        if !self.is_hermitian(1e-12 * (1.0 + self.max_abs())) {
            return Err(Error::Domain("matrix is not Hermitian"));
        }
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if !(d > 0.0) {
                return Err(Error::Domain("matrix is not positive definite"));
            }
            let djj = libm::sqrt(d);
            l[(j, j)] = Complex64::new(djj, 0.0);
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(l)
    }

    /// `ln det` of a Hermitian positive definite matrix.
    pub fn ln_det_hpd(&self) -> Result<f64> {
        let l = self.cholesky()?;
        Ok(2.0 * (0..l.rows).map(|i| libm::log(l[(i, i)].re)).sum::<f64>())
    }

    /// Solve `self * X = rhs` for Hermitian positive definite `self`.
    pub fn solve_hpd(&self, rhs: &CMatrix) -> Result<CMatrix> {
        let l = self.cholesky()?;
        let n = self.rows;
        let mut x = rhs.clone();
        for c in 0..rhs.cols {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= l[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / l[(i, i)];
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= l[(k, i)].conj() * x[(k, c)];
                }
                x[(i, c)] = s / l[(i, i)];
            }
        }
        Ok(x)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A validated Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_hermitian(1e-12 * (1.0 + m.max_abs())) {
            return Err(Error::Domain("matrix is not Hermitian"));
        }
        Ok(HermitianMatrix(m))
    }

    pub fn scalar(x: f64) -> Self {
        HermitianMatrix(CMatrix::from_real(1, 1, &[x]))
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }
}
