//! Uniform samples on spheres, 2-frames of real and complex Stiefel
//! manifolds, and Haar unitary matrices.
//!
//! Every sampler draws only independent standard Gaussians and then uses a
//! rotation-equivariant normalization, so the output law is the invariant
//! one. 2-frames are Gram-Schmidt of two Gaussian columns; this has the law
//! of the first two columns of a Haar orthogonal (unitary) matrix at O(n)
//! cost instead of O(n^3).

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const MIN_GAUSSIAN_NORM: f64 = 1e-300;
const MIN_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Real,
    Complex,
}

/// An orthonormal pair of n-vectors. Real frames have zero imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame2 {
    pub kind: ScalarKind,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl Frame2 {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Hermitian inner products `(<a,a>, <b,b>, <a,b>)`, conjugate-linear in
    /// the first slot.
    pub fn gram(&self) -> (f64, f64, Complex64) {
        (norm_sqr(&self.a), norm_sqr(&self.b), inner(&self.a, &self.b))
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(Complex64::norm_sqr).sum()
}

#[inline]
fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Fill `out` with a uniform point on the sphere of the given radius in
/// `R^{out.len()}`.
pub fn sample_sphere_into<R: Rng + ?Sized>(out: &mut [f64], radius: f64, rng: &mut R) -> Result<()> {
    if out.is_empty() {
        return Err(Error::InvalidDimension("sphere dimension must be at least 1"));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidDimension("sphere radius must be positive"));
    }
    loop {
        let mut ss = 0.0;
        for x in out.iter_mut() {
            *x = gaussian(rng);
            ss += *x * *x;
        }
        let norm = libm::sqrt(ss);
        if norm >= MIN_GAUSSIAN_NORM {
            let scale = radius / norm;
            out.iter_mut().for_each(|x| *x *= scale);
            return Ok(());
        }
    }
}

/// Uniform point on `S^{m-1}(radius)` in `R^m`.
pub fn sample_sphere<R: Rng + ?Sized>(m: usize, radius: f64, rng: &mut R) -> Result<Vec<f64>> {
    let mut out = alloc::vec![0.0; m];
    sample_sphere_into(&mut out, radius, rng)?;
    Ok(out)
}

fn gaussian_vector<R: Rng + ?Sized>(n: usize, kind: ScalarKind, rng: &mut R) -> Vec<Complex64> {
    (0..n)
        .map(|_| match kind {
            ScalarKind::Real => Complex64::new(gaussian(rng), 0.0),
            ScalarKind::Complex => {
                let re = gaussian(rng);
                Complex64::new(re, gaussian(rng))
            }
        })
        .collect()
}

/// Haar-distributed orthonormal 2-frame in `R^n` or `C^n`.
pub fn sample_frame2<R: Rng + ?Sized>(n: usize, kind: ScalarKind, rng: &mut R) -> Result<Frame2> {
    if n < 2 {
        return Err(Error::InvalidDimension("2-frames need n >= 2"));
    }
    let a = loop {
        let mut g = gaussian_vector(n, kind, rng);
        let norm = libm::sqrt(norm_sqr(&g));
        if norm >= MIN_GAUSSIAN_NORM {
            g.iter_mut().for_each(|z| *z /= norm);
            break g;
        }
    };
    let b = loop {
        let mut g = gaussian_vector(n, kind, rng);
        for _pass in 0..2 {
            let proj = inner(&a, &g);
            g.iter_mut().zip(&a).for_each(|(z, ai)| *z -= proj * ai);
        }
        let norm = libm::sqrt(norm_sqr(&g));
        if norm >= MIN_RESIDUAL {
            g.iter_mut().for_each(|z| *z /= norm);
            break g;
        }
    };
    Ok(Frame2 { kind, a, b })
}

/// Haar unitary `n x n` matrix: QR of a complex Gaussian matrix with the
/// diagonal of `R` made positive real.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("unitary size must be at least 1"));
    }
    loop {
        let g = CMatrix::from_fn(n, n, |_, _| {
            let re = gaussian(rng);
            Complex64::new(re, gaussian(rng))
        });
        if let Some((q, _)) = g.qr_positive() {
            return Ok(q);
        }
    }
}

/// Rows `0..p`, columns `0..q` of `m`.
pub fn upper_block(m: &CMatrix, p: usize, q: usize) -> Result<CMatrix> {
    m.upper_block(p, q)
}
