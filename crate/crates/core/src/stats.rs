//! Order-fixed summary statistics, bootstrap, KS distance.

use alloc::vec::Vec;

use rand::Rng;

/// Pairwise summation in index order; the result depends only on the
/// slice contents, never on how the slice was produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 64 {
        xs.iter().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Unbiased sample variance (two-pass).
pub fn variance(xs: &[f64]) -> f64 {
    covariance(xs, xs)
}

/// Unbiased sample covariance (two-pass).
pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let (mx, my) = (mean(xs), mean(ys));
    let prods: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    pairwise_sum(&prods) / (xs.len() as f64 - 1.0)
}

pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    covariance(xs, ys) / libm::sqrt(variance(xs) * variance(ys))
}

/// Bootstrap standard errors of several statistics at once. `stat` gets the
/// resampled row indices and returns one value per statistic.
pub fn bootstrap_se<R, F>(rows: usize, resamples: usize, rng: &mut R, mut stat: F) -> Vec<f64>
where
    R: Rng + ?Sized,
    F: FnMut(&[usize]) -> Vec<f64>,
{
    let mut idx = alloc::vec![0usize; rows];
    let mut draws: Vec<Vec<f64>> = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        idx.iter_mut().for_each(|i| *i = rng.random_range(0..rows));
        draws.push(stat(&idx));
    }
    let k = draws.first().map_or(0, Vec::len);
    (0..k)
        .map(|j| {
            let col: Vec<f64> = draws.iter().map(|d| d[j]).collect();
            libm::sqrt(variance(&col))
        })
        .collect()
}

/// Bootstrap standard error of the sample variance.
pub fn bootstrap_variance_se<R: Rng + ?Sized>(xs: &[f64], resamples: usize, rng: &mut R) -> f64 {
    let mut buf = Vec::with_capacity(xs.len());
    bootstrap_se(xs.len(), resamples, rng, |idx| {
        buf.clear();
        buf.extend(idx.iter().map(|&i| xs[i]));
        alloc::vec![variance(&buf)]
    })[0]
}

/// `sup |F_N - F|`, compared at every distinct sample value and just
/// below it, so atoms of `F` are handled as well as continuous laws.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sup = 0.0f64;
    let mut below = 0usize;
    while below < sorted.len() {
        let x = sorted[below];
        let mut upto = below;
        while upto < sorted.len() && sorted[upto] == x {
            upto += 1;
        }
        let left = libm::fabs(below as f64 / n - cdf(x.next_down()));
        let right = libm::fabs(upto as f64 / n - cdf(x));
        sup = sup.max(left).max(right);
        below = upto;
    }
    sup
}

/// Fraction of samples strictly outside `[lo, hi]`.
pub fn chebyshev_coverage(samples: &[f64], lo: f64, hi: f64) -> f64 {
    samples.iter().filter(|&&x| x < lo || x > hi).count() as f64 / samples.len() as f64
}
