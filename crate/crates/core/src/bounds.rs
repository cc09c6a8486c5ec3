//! Closed-form total-variation bounds and the moment bounds built from them.
//!
//! Total variation is unnormalized (`int |dmu - dnu|`, at most 2)
//! throughout. Raw values may exceed 2; [`BoundEvaluation::clipped`] caps
//! them.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

fn block_exponent_base(r: u64, s: u64, n: u64, shift: u64) -> Result<(f64, f64)> {
    if r == 0 || s == 0 {
        return Err(Error::BoundUndefined("block sizes must be positive"));
    }
    if r + s + 2 >= n {
        return Err(Error::BoundUndefined("need r + s + 2 < n"));
    }
    let t = r.min(s) as f64;
    Ok((t * t, 1.0 - (r + s + shift) as f64 / n as f64))
}

/// Bound on the TV distance between the upper `r x s` block of a Haar
/// orthogonal `n x n` matrix (scaled by `sqrt n`) and a standard Gaussian
/// matrix: `2((1 - (r+s+2)/n)^(-t^2/2) - 1)`, `t = min(r, s)`.
pub fn ortho_block_bound(r: u64, s: u64, n: u64) -> Result<f64> {
    let (t2, base) = block_exponent_base(r, s, n, 2)?;
    Ok(2.0 * (libm::pow(base, -t2 / 2.0) - 1.0))
}

/// Unitary analogue: `2((1 - (r+s)/n)^(-t^2) - 1)`, valid for `r + s + 2 < n`.
pub fn unitary_block_bound(r: u64, s: u64, n: u64) -> Result<f64> {
    let (t2, base) = block_exponent_base(r, s, n, 0)?;
    Ok(2.0 * (libm::pow(base, -t2) - 1.0))
}

/// Bound on the TV distance between `k` coordinates of a uniform point on
/// `S^{m-1}(sqrt m)` and `k` independent standard Gaussians:
/// `2(k+3)/(m-k-3)` for `1 <= k <= m - 4`.
pub fn sphere_marginal_bound(k: u64, m: u64) -> Result<f64> {
    if k == 0 || k + 4 > m {
        return Err(Error::BoundUndefined("need 1 <= k <= m - 4"));
    }
    Ok(2.0 * (k + 3) as f64 / (m - k - 3) as f64)
}

fn check_segment(k: u64, n: u64) -> Result<()> {
    if k == 0 || k + 5 > n {
        return Err(Error::BoundUndefined("need 1 <= k <= n - 5"));
    }
    Ok(())
}

/// TV bound between the first `k` edges of `Pol_2(n)` and `Arm_2(n)`.
pub fn b2(k: u64, n: u64) -> Result<f64> {
    check_segment(k, n)?;
    let (k, n) = (k as f64, n as f64);
    let d = n - k - 4.0;
    Ok(2.0 * ((2.0 * k + 3.0) / (2.0 * n - 2.0 * k - 3.0) + (2.0 * n - k - 4.0) * (k + 4.0) / (d * d)))
}

/// TV bound between the first `k` edges of `Pol_3(n)` and `Arm_3(n)`.
/// For `k = 1` the unitary block term has `t = 1` and is assembled directly.
pub fn b3(k: u64, n: u64) -> Result<f64> {
    check_segment(k, n)?;
    if k == 1 {
        return Ok(unitary_block_bound(1, 2, n)? + sphere_marginal_bound(4, 4 * n)?);
    }
    let (k, n) = (k as f64, n as f64);
    let ratio = n / (n - k - 2.0);
    let r2 = ratio * ratio;
    Ok(2.0 * ((4.0 * k + 3.0) / (4.0 * n - 4.0 * k - 3.0) + r2 * r2 - 1.0))
}

/// Segment bound for the given dimension.
pub fn segment_bound(dim: usize, k: u64, n: u64) -> Result<f64> {
    match dim {
        2 => b2(k, n),
        3 => b3(k, n),
        _ => Err(Error::InvalidDimension("dimension must be 2 or 3")),
    }
}

/// `lim n * B_dim(k, n)` for fixed `k`.
pub fn asymptotic_slope(dim: usize, k: u64) -> Result<f64> {
    match (dim, k) {
        (2, 1..) => Ok(6.0 * k as f64 + 19.0),
        (3, 2..) => Ok(10.0 * k as f64 + 17.5),
        (2 | 3, _) => Err(Error::BoundUndefined("k below the asymptotic formula's range")),
        _ => Err(Error::InvalidDimension("dimension must be 2 or 3")),
    }
}

/// `lim B_dim(alpha n, n)` as `n -> infinity`.
pub fn alpha_limit(dim: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain("alpha must lie in (0, 1)"));
    }
    let c = 1.0 - alpha;
    match dim {
        2 => Ok(2.0 * alpha * (3.0 - 2.0 * alpha) / (c * c)),
        3 => Ok(2.0 * (alpha / c + 1.0 / (c * c * c * c) - 1.0)),
        _ => Err(Error::InvalidDimension("dimension must be 2 or 3")),
    }
}

/// Root of `alpha_limit(dim, alpha) = 1` found by bisection, together with
/// the number of halvings used.
pub fn alpha_threshold_bisect(dim: usize, tol: f64) -> Result<(f64, u32)> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if alpha_limit(dim, mid)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok((0.5 * (lo + hi), iterations))
}

/// Fraction `alpha` above which the limiting segment bound exceeds 1.
pub fn alpha_threshold(dim: usize) -> Result<f64> {
    alpha_threshold_bisect(dim, 1e-12).map(|(a, _)| a)
}

/// `M * B_dim(k, n)`: how far the expectation of an `M`-bounded `k`-edge
/// functional can move between arms and closed polygons.
pub fn expectation_transfer_gap(m: f64, dim: usize, k: u64, n: u64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(Error::Domain("M must be nonnegative"));
    }
    Ok(m * segment_bound(dim, k, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvatureVariance {
    /// `(n pi)^2 B_2(4, n)`.
    Simple,
    /// Partitioned form with the expected-angle surplus `eps`.
    Refined { eps: f64 },
}

/// Upper bound on the variance of total curvature over `Pol_2(n)`.
pub fn curvature_variance_bound(n: u64, form: CurvatureVariance) -> Result<f64> {
    if n < 9 {
        return Err(Error::BoundUndefined("need n >= 9"));
    }
    let nf = n as f64;
    match form {
        CurvatureVariance::Simple => Ok(nf * nf * PI * PI * b2(4, n)?),
        CurvatureVariance::Refined { eps } => {
            if !(eps >= 0.0) {
                return Err(Error::Domain("eps must be nonnegative"));
            }
            let main = nf * b2(2, n)? + 2.0 * nf * b2(3, n)? + (nf * nf - 3.0 * nf) * b2(4, n)?;
            Ok(PI * PI * main - nf * nf * (PI * eps + eps * eps))
        }
    }
}

/// Upper bound on the variance of total torsion over `Pol_3(n)`.
pub fn torsion_variance_bound(n: u64) -> Result<f64> {
    let nf = n as f64;
    Ok(nf * PI * PI / 3.0 + nf * nf * PI * PI * b3(6, n)?)
}

/// Chebyshev interval `center +- lambda sqrt(var)` and its guaranteed
/// coverage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevInterval {
    pub lo: f64,
    pub hi: f64,
    pub min_coverage: f64,
}

pub fn chebyshev_interval(center: f64, var_bound: f64, lambda: f64) -> Result<ChebyshevInterval> {
    if !(var_bound >= 0.0) || !(lambda > 0.0) {
        return Err(Error::Domain("need var_bound >= 0 and lambda > 0"));
    }
    let half = lambda * libm::sqrt(var_bound);
    Ok(ChebyshevInterval {
        lo: center - half,
        hi: center + half,
        min_coverage: (1.0 - 1.0 / (lambda * lambda)).max(0.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    OrthoBlock,
    SphereMarginal,
    UnitaryBlock,
    B2,
    B3,
    CurvatureVar,
    TorsionVar,
}

impl BoundFamily {
    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::OrthoBlock => "ortho_block",
            BoundFamily::SphereMarginal => "sphere_marginal",
            BoundFamily::UnitaryBlock => "unitary_block",
            BoundFamily::B2 => "b2",
            BoundFamily::B3 => "b3",
            BoundFamily::CurvatureVar => "curvature_var",
            BoundFamily::TorsionVar => "torsion_var",
        }
    }
}

/// Integer inputs of a bound. `r, s` are block sizes, `k` a segment or
/// marginal length, `n` the matrix or polygon size (ambient dimension for
/// sphere marginals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundParams {
    pub r: u64,
    pub s: u64,
    pub k: u64,
    pub n: u64,
}

/// One evaluated bound. `value` is absent exactly when `valid` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEvaluation {
    pub family: BoundFamily,
    pub params: BoundParams,
    pub value: Option<f64>,
    pub valid: bool,
    /// Leading coefficient: of `1/n` for TV bounds, of `n` for the variance
    /// bounds.
    pub asymptote_coeff: Option<f64>,
}

impl BoundEvaluation {
    pub fn clipped(&self) -> Option<f64> {
        match self.family {
            BoundFamily::CurvatureVar | BoundFamily::TorsionVar => self.value,
            _ => self.value.map(|v| v.min(2.0)),
        }
    }
}

pub fn evaluate(family: BoundFamily, params: BoundParams) -> BoundEvaluation {
    let BoundParams { r, s, k, n } = params;
    let t2 = |r: u64, s: u64| {
        let t = r.min(s) as f64;
        t * t
    };
    let (value, asymptote) = match family {
        BoundFamily::OrthoBlock => (ortho_block_bound(r, s, n), Some(t2(r, s) * (r + s + 2) as f64)),
        BoundFamily::UnitaryBlock => (unitary_block_bound(r, s, n), Some(2.0 * t2(r, s) * (r + s) as f64)),
        BoundFamily::SphereMarginal => (sphere_marginal_bound(k, n), Some(2.0 * (k + 3) as f64)),
        BoundFamily::B2 => (b2(k, n), asymptotic_slope(2, k).ok()),
        BoundFamily::B3 => (b3(k, n), if k == 1 { Some(9.5) } else { asymptotic_slope(3, k).ok() }),
        BoundFamily::CurvatureVar => (curvature_variance_bound(n, CurvatureVariance::Simple), Some(43.0 * PI * PI)),
        BoundFamily::TorsionVar => (torsion_variance_bound(n), Some(PI * PI * (1.0 / 3.0 + 77.5))),
    };
    let value = value.ok();
    BoundEvaluation { family, params, valid: value.is_some(), value, asymptote_coeff: asymptote }
}

/// Smallest `n` in `lo..=hi` from which `pred(n)` holds for every larger `n`
/// in the range, if any.
pub fn onset<F: Fn(u64) -> bool>(lo: u64, hi: u64, pred: F) -> Option<u64> {
    let mut first = None;
    for n in lo..=hi {
        match (pred(n), first) {
            (true, None) => first = Some(n),
            (false, Some(_)) => first = None,
            _ => {}
        }
    }
    first
}

/// Every bound family on a grid of `k` values at fixed `n`, for tabulation.
pub fn bound_table(dim: usize, ks: &[u64], n: u64) -> Vec<BoundEvaluation> {
    let family = if dim == 2 { BoundFamily::B2 } else { BoundFamily::B3 };
    ks.iter().map(|&k| evaluate(family, BoundParams { k, n, ..Default::default() })).collect()
}
