//! Densities governing blocks of Haar unitary matrices.
//!
//! For the upper `p x q` block `D` of a Haar unitary `n x n` matrix the
//! density (Lebesgue measure on `C^{p x q}`) is
//! `c1 det(I_q - D* D)^{n-p-q}` with
//! `c1 = pi^{-pq} prod_{j=1..q} Gamma(n-j+1) / Gamma(n-p-j+1)`, and
//! `D* D` follows the complex matrix-variate beta type I law
//! `CBI_q(p, n-p)`. Everything is evaluated in log space and exponentiated
//! last.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianMatrix};

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln CGamma_m(a) = m(m-1)/2 ln pi + sum_{j=1..m} ln Gamma(a - j + 1)`.
pub fn ln_multigamma(m: usize, a: f64) -> Result<f64> {
    if m == 0 || !(a > (m - 1) as f64) {
        return Err(Error::Domain("complex multivariate gamma needs m >= 1 and a > m - 1"));
    }
    let mf = m as f64;
    Ok(mf * (mf - 1.0) / 2.0 * libm::log(PI) + (1..=m).map(|j| ln_gamma(a - j as f64 + 1.0)).sum::<f64>())
}

/// `ln c1` for a `p x q` block of an `n x n` Haar unitary.
pub fn ln_block_constant(p: usize, q: usize, n: usize) -> f64 {
    let (pf, nf) = (p as f64, n as f64);
    -(pf * q as f64) * libm::log(PI)
        + (1..=q).map(|j| ln_gamma(nf - j as f64 + 1.0) - ln_gamma(nf - pf - j as f64 + 1.0)).sum::<f64>()
}

/// Density of the upper block `delta` (`p x q`) of a Haar unitary `n x n`.
pub fn block_density(delta: &CMatrix, n: usize) -> Result<f64> {
    let (p, q) = (delta.rows(), delta.cols());
    if p == 0 || q == 0 || n <= p + q {
        return Err(Error::Domain("block density needs n > p + q"));
    }
    let gap = CMatrix::identity(q).sub(&delta.adjoint().matmul(delta));
    let ln_det = gap.ln_det_hpd().map_err(|_| Error::Support("I - D*D is not positive definite"))?;
    Ok(libm::exp(ln_block_constant(p, q, n) + (n - p - q) as f64 * ln_det))
}

/// Complex Wishart density `CW_p(n, Sigma)` at `a`:
/// `det(A)^{n-p} exp(-tr(Sigma^-1 A)) / (CGamma_p(n) det(Sigma)^n)`.
pub fn wishart_density(a: &HermitianMatrix, n: usize, sigma: &HermitianMatrix) -> Result<f64> {
    let p = a.size();
    if sigma.size() != p {
        return Err(Error::InvalidDimension("A and Sigma must have the same size"));
    }
    if n < p {
        return Err(Error::Domain("Wishart density needs n >= p"));
    }
    let ln_det_sigma = sigma.as_matrix().ln_det_hpd().map_err(|_| Error::Domain("Sigma must be positive definite"))?;
    let am = a.as_matrix();
    let tr = sigma.as_matrix().solve_hpd(am)?.trace().re;
    let ln_norm = ln_multigamma(p, n as f64)? + n as f64 * ln_det_sigma;
    let det_term = match am.ln_det_hpd() {
        Ok(ld) => (n - p) as f64 * ld,
        Err(_) => {
            // Singular but PSD: det(A)^{n-p} is 0 unless n == p.
            let nudged = am.sub(&CMatrix::identity(p).scale(-1e-12 * (1.0 + am.max_abs())));
            if nudged.cholesky().is_err() {
                return Err(Error::Domain("A must be positive semi-definite"));
            }
            if n > p {
                return Ok(0.0);
            }
            0.0
        }
    };
    Ok(libm::exp(det_term - tr - ln_norm))
}

/// Complex matrix-variate beta type I density `CBI_m(a, b)` at `m`.
pub fn cbi_density(m: &HermitianMatrix, a: f64, b: f64) -> Result<f64> {
    let size = m.size();
    let mf = size as f64;
    let ln_c = ln_multigamma(size, a + b)? - ln_multigamma(size, a)? - ln_multigamma(size, b)?;
    let mm = m.as_matrix();
    let ld = mm.ln_det_hpd().map_err(|_| Error::Support("M must be positive definite"))?;
    let ld_c = CMatrix::identity(size).sub(mm).ln_det_hpd().map_err(|_| Error::Support("I - M must be positive definite"))?;
    Ok(libm::exp(ln_c + (a - mf) * ld + (b - mf) * ld_c))
}

/// Regularized incomplete beta `I_x(a, b)` for positive integer `a, b`, via
/// the binomial tail `sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}`.
pub fn beta_cdf_int(a: u32, b: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let total = a + b - 1;
    let (lx, l1x) = (libm::log(x), libm::log1p(-x));
    let ln_choose = |j: u32| ln_gamma(total as f64 + 1.0) - ln_gamma(j as f64 + 1.0) - ln_gamma((total - j) as f64 + 1.0);
    (a..=total)
        .map(|j| libm::exp(ln_choose(j) + j as f64 * lx + (total - j) as f64 * l1x))
        .sum::<f64>()
        .min(1.0)
}

/// Result of scanning `g(v)/f(v)` on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioArgmax {
    pub argmax: f64,
    pub max_ratio: f64,
    pub grid_step: f64,
}

/// Grid maximizer of `g/f` where `g` is the `CBI_1(r, n-r)` (that is,
/// `Beta(r, n-r)`) density of `|D|^2` for an `r x 1` Haar block and `f` the
/// `CW_1(r, 1/n)` density of its Gaussian stand-in. The exact maximizer is
/// `(r + 1)/n`.
pub fn ratio_argmax_check(r: usize, n: usize, grid_points: usize) -> Result<RatioArgmax> {
    if r == 0 || r + 3 >= n {
        return Err(Error::Domain("need r >= 1 and r + 3 < n"));
    }
    if grid_points < 1000 {
        return Err(Error::Domain("need at least 1000 grid points"));
    }
    let sigma = HermitianMatrix::scalar(1.0 / n as f64);
    let step = 1.0 / (grid_points + 1) as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 1..=grid_points {
        let v = step * i as f64;
        let m = HermitianMatrix::scalar(v);
        let ratio = cbi_density(&m, r as f64, (n - r) as f64)? / wishart_density(&m, r, &sigma)?;
        if ratio > best.1 {
            best = (v, ratio);
        }
    }
    Ok(RatioArgmax { argmax: best.0, max_ratio: best.1, grid_step: step })
}
