//! Seeded ensembles over the four polygon spaces and the estimators run on
//! them.
//!
//! An ensemble of `count` samples is cut into chunks of [`CHUNK_SIZE`];
//! chunk `c` of role `r` draws from `SeedStream::substream(seed, r, c)`.
//! Chunks are independent, so an executor may run them in any order or in
//! parallel; results are reassembled in chunk order and all reductions are
//! index-ordered, which makes every output independent of scheduling.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::{self, LocalFunctional};
use crate::polygon::{Polygon, Space};
use crate::rng::SeedStream;
use crate::stats;

pub const CHUNK_SIZE: usize = 1024;
pub const BOOTSTRAP_RESAMPLES: usize = 200;
/// Largest tolerated fraction of samples dropped as degenerate.
pub const MAX_EXCLUDED_FRACTION: f64 = 1e-4;

const ROLE_A: u32 = 0;
const ROLE_B: u32 = 1;
const ROLE_BOOTSTRAP: u32 = 0xB007;

/// Which sample set of an experiment a stream belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub space: Space,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub role: u32,
}

/// Samples produced by one chunk, plus how many were dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkOutput<T> {
    pub items: Vec<T>,
    pub excluded: usize,
}

impl EnsembleSpec {
    pub fn new(space: Space, n: usize, count: usize, seed: u64) -> Self {
        EnsembleSpec { space, n, count, seed, role: ROLE_A }
    }

    pub fn with_role(self, role: u32) -> Self {
        EnsembleSpec { role, ..self }
    }

    pub fn chunks(&self) -> usize {
        self.count.div_ceil(CHUNK_SIZE)
    }

    fn chunk_len(&self, chunk: usize) -> usize {
        CHUNK_SIZE.min(self.count - chunk * CHUNK_SIZE)
    }

    /// Sample chunk `chunk` and apply `f` to every polygon. Degenerate
    /// geometry errors drop the sample; any other error aborts.
    pub fn map_chunk<T, F>(&self, chunk: usize, f: &F) -> Result<ChunkOutput<T>>
    where
        F: Fn(&Polygon) -> Result<T>,
    {
        let mut rng = SeedStream::substream(self.seed, self.role, chunk as u32).rng();
        let len = self.chunk_len(chunk);
        let mut items = Vec::with_capacity(len);
        let mut excluded = 0;
        for _ in 0..len {
            let p = self.space.sample(self.n, &mut rng)?;
            match f(&p) {
                Ok(v) => items.push(v),
                Err(Error::DegenerateEdge | Error::DegenerateTorsion) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(ChunkOutput { items, excluded })
    }
}

/// Runs independent chunk jobs. Implementations must return outputs in
/// chunk-index order.
pub trait ChunkExecutor {
    fn run<T, F>(&self, chunks: usize, job: F) -> Result<Vec<ChunkOutput<T>>>
    where
        T: Send,
        F: Fn(usize) -> Result<ChunkOutput<T>> + Sync + Send;
}

/// Runs chunks one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ChunkExecutor for Sequential {
    fn run<T, F>(&self, chunks: usize, job: F) -> Result<Vec<ChunkOutput<T>>>
    where
        T: Send,
        F: Fn(usize) -> Result<ChunkOutput<T>> + Sync + Send,
    {
        (0..chunks).map(job).collect()
    }
}

/// All samples of an ensemble after applying `f`, in sample order, with the
/// exclusion count checked against [`MAX_EXCLUDED_FRACTION`].
pub fn collect<T, F, E>(spec: &EnsembleSpec, exec: &E, f: F) -> Result<(Vec<T>, usize)>
where
    T: Send,
    F: Fn(&Polygon) -> Result<T> + Sync + Send,
    E: ChunkExecutor + ?Sized,
{
    if spec.count == 0 {
        return Err(Error::InvalidSize("ensemble needs at least one sample"));
    }
    let outputs = exec.run(spec.chunks(), |c| spec.map_chunk(c, &f))?;
    let excluded: usize = outputs.iter().map(|o| o.excluded).sum();
    if excluded as f64 > MAX_EXCLUDED_FRACTION * spec.count as f64 {
        return Err(Error::Reliability { excluded, total: spec.count });
    }
    let mut items = Vec::with_capacity(spec.count - excluded);
    for o in outputs {
        items.extend(o.items);
    }
    Ok((items, excluded))
}

/// A per-polygon real observable.
#[derive(Clone)]
pub enum Observable {
    /// Total curvature `kappa`.
    TotalCurvature,
    /// Total torsion (spatial only).
    TotalTorsion,
    /// Turning angle between edges `i` and `i + 1` (0-based).
    TurningAngle(usize),
    /// Torsion at edge `i + 1`, i.e. on the window `(e_i, e_{i+1}, e_{i+2})`.
    TorsionAngle(usize),
    /// Product of the turning angles at slots `i` and `i + 1`.
    TurningProduct(usize),
    /// Any local functional applied to the window starting at edge `start`.
    Local { name: String, start: usize, functional: Arc<dyn LocalFunctional + Send + Sync> },
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Observable {
    pub fn name(&self) -> String {
        match self {
            Observable::TotalCurvature => "kappa".into(),
            Observable::TotalTorsion => "tau_total".into(),
            Observable::TurningAngle(i) => alloc::format!("theta_{}", i + 1),
            Observable::TorsionAngle(i) => alloc::format!("tau_{}", i + 1),
            Observable::TurningProduct(i) => alloc::format!("theta_{}*theta_{}", i + 1, i + 2),
            Observable::Local { name, .. } => name.clone(),
        }
    }

    /// Window width and essential bound, for local observables.
    pub fn local_shape(&self) -> Option<(usize, f64)> {
        use core::f64::consts::PI;
        match self {
            Observable::TurningAngle(_) => Some((2, PI)),
            Observable::TorsionAngle(_) => Some((3, PI)),
            Observable::TurningProduct(_) => Some((3, PI * PI)),
            Observable::Local { functional, .. } => Some((functional.width(), functional.bound())),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Observable> {
        let slot = |prefix: &str| s.strip_prefix(prefix).and_then(|i| i.parse::<usize>().ok()).filter(|&i| i >= 1).map(|i| i - 1);
        match s {
            "kappa" => Some(Observable::TotalCurvature),
            "tau_total" => Some(Observable::TotalTorsion),
            _ => slot("theta_").map(Observable::TurningAngle).or_else(|| slot("tau_").map(Observable::TorsionAngle)),
        }
    }

    fn window(p: &Polygon, start: usize, k: usize) -> Result<Vec<[f64; 3]>> {
        let e = p.edges();
        let n = e.len();
        if p.is_closed() {
            if k > n {
                return Err(Error::InvalidSize("window wider than polygon"));
            }
            Ok((0..k).map(|j| e[(start + j) % n]).collect())
        } else {
            e.get(start..start + k).map(<[_]>::to_vec).ok_or(Error::InvalidSize("window runs past the end of the arm"))
        }
    }

    pub fn eval(&self, p: &Polygon) -> Result<f64> {
        match self {
            Observable::TotalCurvature => geometry::total_curvature(p),
            Observable::TotalTorsion => geometry::total_torsion(p),
            Observable::TurningAngle(i) => {
                let w = Self::window(p, *i, 2)?;
                geometry::turning_angle(&w[0], &w[1])
            }
            Observable::TorsionAngle(i) => {
                if p.dim() != 3 {
                    return Err(Error::NotSpatial);
                }
                let w = Self::window(p, *i, 3)?;
                geometry::torsion_angle(&w[0], &w[1], &w[2])
            }
            Observable::TurningProduct(i) => {
                let w = Self::window(p, *i, 3)?;
                Ok(geometry::turning_angle(&w[0], &w[1])? * geometry::turning_angle(&w[1], &w[2])?)
            }
            Observable::Local { start, functional, .. } => functional.eval(&Self::window(p, *start, functional.width())?),
        }
    }
}

/// Raw per-sample observable values of an ensemble.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub spec: EnsembleSpec,
    pub names: Vec<String>,
    /// One column per observable, one entry per retained sample.
    pub columns: Vec<Vec<f64>>,
    pub excluded: usize,
}

impl Ensemble {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names.iter().position(|n| n == name).map(|i| self.columns[i].as_slice())
    }

    pub fn summary(&self) -> EnsembleSummary {
        let records = self
            .names
            .iter()
            .zip(&self.columns)
            .map(|(name, col)| {
                let variance = stats::variance(col);
                FunctionalSummary {
                    name: name.clone(),
                    mean: stats::mean(col),
                    variance,
                    std_error: libm::sqrt(variance / col.len() as f64),
                }
            })
            .collect();
        EnsembleSummary {
            space: self.spec.space,
            n: self.spec.n,
            count: self.columns.first().map_or(0, Vec::len),
            seed: self.spec.seed,
            excluded: self.excluded,
            records,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalSummary {
    pub name: String,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub space: Space,
    pub n: usize,
    /// Retained samples.
    pub count: usize,
    pub seed: u64,
    pub excluded: usize,
    pub records: Vec<FunctionalSummary>,
}

impl EnsembleSummary {
    pub fn get(&self, name: &str) -> Option<&FunctionalSummary> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Sample `count` polygons and evaluate every observable on each.
pub fn run_ensemble<E: ChunkExecutor + ?Sized>(
    space: Space,
    n: usize,
    count: usize,
    observables: &[Observable],
    seed: u64,
    exec: &E,
) -> Result<Ensemble> {
    if count < 2 {
        return Err(Error::InvalidSize("ensembles need at least two samples"));
    }
    if n < 3 {
        return Err(Error::InvalidSize("polygons need n >= 3"));
    }
    let spec = EnsembleSpec::new(space, n, count, seed);
    let (rows, excluded) = collect(&spec, exec, |p| observables.iter().map(|o| o.eval(p)).collect::<Result<Vec<f64>>>())?;
    let columns = (0..observables.len()).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    Ok(Ensemble { spec, names: observables.iter().map(Observable::name).collect(), columns, excluded })
}

/// Shared-grid histograms of two `dim`-dimensional samples and the binned
/// total variation between them (normalized to `[0, 1]`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridHistogram {
    pub dim: usize,
    pub bins_per_axis: usize,
    pub ranges: Vec<(f64, f64)>,
    pub counts_a: Vec<u64>,
    pub counts_b: Vec<u64>,
    /// `1/2 sum |p_a - p_b|` over cells.
    pub tv_estimate: f64,
    /// Same statistic between the two halves of sample A.
    pub null_calibration: f64,
    /// Bootstrap standard error of `tv_estimate`.
    pub tv_std_error: f64,
}

impl GridHistogram {
    /// Build the grid over the pooled range (widened by 1% on each side) and
    /// bin both samples, given as flat row-major `dim`-vectors.
    pub fn build<R: rand::Rng + ?Sized>(dim: usize, bins: usize, a: &[f64], b: &[f64], bootstrap_rng: &mut R) -> Result<Self> {
        if bins < 4 {
            return Err(Error::Domain("need at least 4 bins per axis"));
        }
        let (na, nb) = (a.len() / dim, b.len() / dim);
        if na < 2 || nb < 1 || a.len() % dim != 0 || b.len() % dim != 0 {
            return Err(Error::InvalidSize("samples must be nonempty rows of length dim"));
        }
        let cells = (bins as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
        if cells.saturating_mul(50) > na.min(nb) as u64 {
            return Err(Error::Resolution { cells, samples: na.min(nb) });
        }
        let ranges: Vec<(f64, f64)> = (0..dim)
            .map(|axis| {
                let (lo, hi) = a.iter().chain(b).skip(axis).step_by(dim).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
                let pad = 0.01 * (hi - lo).max(f64::MIN_POSITIVE);
                (lo - pad, hi + pad)
            })
            .collect();
        let cell_of = |row: &[f64]| -> usize {
            row.iter().zip(&ranges).fold(0usize, |acc, (&x, &(lo, hi))| {
                let t = ((x - lo) / (hi - lo) * bins as f64) as usize;
                acc * bins + t.min(bins - 1)
            })
        };
        let cells_a: Vec<usize> = a.chunks_exact(dim).map(cell_of).collect();
        let cells_b: Vec<usize> = b.chunks_exact(dim).map(cell_of).collect();
        let count = |idx: &mut dyn Iterator<Item = usize>| {
            let mut c = vec![0u64; cells as usize];
            idx.for_each(|i| c[i] += 1);
            c
        };
        let counts_a = count(&mut cells_a.iter().copied());
        let counts_b = count(&mut cells_b.iter().copied());
        let tv_estimate = binned_tv(&counts_a, &counts_b);
        let half = na / 2;
        let null_calibration = binned_tv(&count(&mut cells_a[..half].iter().copied()), &count(&mut cells_a[half..].iter().copied()));

        let mut idx_a = vec![0usize; na];
        let mut idx_b = vec![0usize; nb];
        let draws: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
            .map(|_| {
                idx_a.iter_mut().for_each(|i| *i = bootstrap_rng.random_range(0..na));
                idx_b.iter_mut().for_each(|i| *i = bootstrap_rng.random_range(0..nb));
                binned_tv(&count(&mut idx_a.iter().map(|&i| cells_a[i])), &count(&mut idx_b.iter().map(|&i| cells_b[i])))
            })
            .collect();
        let tv_std_error = libm::sqrt(stats::variance(&draws));

        Ok(GridHistogram { dim, bins_per_axis: bins, ranges, counts_a, counts_b, tv_estimate, null_calibration, tv_std_error })
    }

    /// Cell frequencies `(cell index, p_a, p_b)` for plotting.
    pub fn frequencies(&self) -> Vec<(usize, f64, f64)> {
        let (ta, tb) = (self.counts_a.iter().sum::<u64>() as f64, self.counts_b.iter().sum::<u64>() as f64);
        self.counts_a.iter().zip(&self.counts_b).enumerate().map(|(i, (&a, &b))| (i, a as f64 / ta, b as f64 / tb)).collect()
    }

    /// Per-axis bin indices of a flat cell index.
    pub fn cell_coords(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = cell % self.bins_per_axis;
            cell /= self.bins_per_axis;
        }
        out
    }
}

fn binned_tv(a: &[u64], b: &[u64]) -> f64 {
    let (ta, tb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let diffs: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| libm::fabs(x as f64 / ta - y as f64 / tb)).collect();
    0.5 * stats::pairwise_sum(&diffs)
}

/// Binned TV between the first-`k`-edge marginals of two spaces of the same
/// dimension, `count` samples each.
#[allow(clippy::too_many_arguments)]
pub fn estimate_tv<E: ChunkExecutor + ?Sized>(
    space_a: Space,
    space_b: Space,
    n: usize,
    k: usize,
    count: usize,
    bins: usize,
    seed: u64,
    exec: &E,
) -> Result<GridHistogram> {
    if space_a.dim() != space_b.dim() {
        return Err(Error::InvalidDimension("spaces must share a dimension"));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidSize("segment length must be in 1..=n"));
    }
    let dim = space_a.dim() * k;
    let cells = (bins as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if cells.saturating_mul(50) > count as u64 {
        return Err(Error::Resolution { cells, samples: count });
    }
    let seg = |p: &Polygon| p.segment(k);
    let (a, _) = collect(&EnsembleSpec::new(space_a, n, count, seed).with_role(ROLE_A), exec, seg)?;
    let (b, _) = collect(&EnsembleSpec::new(space_b, n, count, seed).with_role(ROLE_B), exec, seg)?;
    let (a, b): (Vec<f64>, Vec<f64>) = (a.concat(), b.concat());
    let mut rng = SeedStream::substream(seed, ROLE_BOOTSTRAP, 0).rng();
    GridHistogram::build(dim, bins, &a, &b, &mut rng)
}

/// Covariance structure of the turning angles of one ensemble.
///
/// By exchangeability of edges every lag-0, lag-1 and lag-2 slot pair has
/// the same covariance, so `c_self`, `c_adjacent` and `c_distant` pool all
/// slot pairs at their lag.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariancePartition {
    pub c_self: f64,
    pub c_adjacent: f64,
    pub c_distant: f64,
    /// `n c_self + 2n c_adjacent + (n^2 - 3n) c_distant`.
    pub assembled_variance: f64,
    /// Sample variance of total curvature over the same ensemble.
    pub direct_variance: f64,
    /// `Cov(theta_1, theta_2)` and `Cov(theta_2, theta_3)` from single slots.
    pub cov_12: f64,
    pub cov_23: f64,
    pub se_c_adjacent: f64,
    pub se_c_distant: f64,
    pub se_assembled_minus_direct: f64,
    pub se_cov_23_minus_12: f64,
    pub se_direct_variance: f64,
}

pub fn covariance_partition<E: ChunkExecutor + ?Sized>(space: Space, n: usize, count: usize, seed: u64, exec: &E) -> Result<CovariancePartition> {
    if n < 7 {
        return Err(Error::InvalidSize("covariance partition needs n >= 7"));
    }
    if count < 2 {
        return Err(Error::InvalidSize("ensembles need at least two samples"));
    }
    let closed = space.closed();
    // Per sample: [sum theta, sum theta^2, sum lag-1 products, sum lag-2
    // products, theta_1, theta_2, theta_3].
    let per_sample = |p: &Polygon| -> Result<[f64; 7]> {
        let t = geometry::turning_angles(p)?;
        let m = t.len();
        let lag = |d: usize| -> f64 {
            if closed {
                (0..m).map(|i| t[i] * t[(i + d) % m]).sum()
            } else {
                (0..m - d).map(|i| t[i] * t[i + d]).sum()
            }
        };
        Ok([t.iter().sum(), t.iter().map(|x| x * x).sum(), lag(1), lag(2), t[0], t[1], t[2]])
    };
    let spec = EnsembleSpec::new(space, n, count, seed);
    let (rows, _) = collect(&spec, exec, per_sample)?;
    let slots = if closed { n } else { n - 1 };
    let pairs = |d: usize| if closed { n } else { n - 1 - d } as f64;
    let nf = n as f64;

    let estimate = |idx: &mut dyn Iterator<Item = &[f64; 7]>| -> [f64; 8] {
        let rows: Vec<&[f64; 7]> = idx.collect();
        let col = |j: usize| -> Vec<f64> { rows.iter().map(|r| r[j]).collect() };
        let m = stats::mean(&col(0)) / slots as f64;
        let c_self = stats::mean(&col(1)) / slots as f64 - m * m;
        let c_adj = stats::mean(&col(2)) / pairs(1) - m * m;
        let c_dist = stats::mean(&col(3)) / pairs(2) - m * m;
        let assembled = nf * c_self + 2.0 * nf * c_adj + (nf * nf - 3.0 * nf) * c_dist;
        let direct = stats::variance(&col(0));
        let cov_12 = stats::covariance(&col(4), &col(5));
        let cov_23 = stats::covariance(&col(5), &col(6));
        [c_self, c_adj, c_dist, assembled, direct, cov_12, cov_23, 0.0]
    };
    let point = estimate(&mut rows.iter());
    let mut rng = SeedStream::substream(seed, ROLE_BOOTSTRAP, 1).rng();
    let se = stats::bootstrap_se(rows.len(), BOOTSTRAP_RESAMPLES, &mut rng, |idx| {
        let e = estimate(&mut idx.iter().map(|&i| &rows[i]));
        vec![e[1], e[2], e[3] - e[4], e[6] - e[5], e[4]]
    });
    Ok(CovariancePartition {
        c_self: point[0],
        c_adjacent: point[1],
        c_distant: point[2],
        assembled_variance: point[3],
        direct_variance: point[4],
        cov_12: point[5],
        cov_23: point[6],
        se_c_adjacent: se[0],
        se_c_distant: se[1],
        se_assembled_minus_direct: se[2],
        se_cov_23_minus_12: se[3],
        se_direct_variance: se[4],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking() {
        let spec = EnsembleSpec::new(Space::Arm2, 5, 2500, 1);
        assert_eq!(spec.chunks(), 3);
        assert_eq!(spec.chunk_len(2), 2500 - 2048);
    }

    #[test]
    fn observable_names_parse_back() {
        for o in [Observable::TotalCurvature, Observable::TotalTorsion, Observable::TurningAngle(0), Observable::TorsionAngle(4)] {
            assert_eq!(Observable::parse(&o.name()).map(|p| p.name()), Some(o.name()));
        }
        assert!(Observable::parse("theta_0").is_none());
        assert!(Observable::parse("bogus").is_none());
    }

    #[test]
    fn observables_on_square() {
        let sq = Polygon::planar(true, &[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).unwrap();
        let half_pi = core::f64::consts::FRAC_PI_2;
        assert_eq!(Observable::TurningAngle(3).eval(&sq).unwrap(), half_pi);
        assert_eq!(Observable::TurningProduct(0).eval(&sq).unwrap(), half_pi * half_pi);
        assert_eq!(Observable::TorsionAngle(0).eval(&sq), Err(Error::NotSpatial));
        let arm = Polygon::planar(false, &[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(Observable::TurningAngle(2).eval(&arm).is_err());
    }

    #[test]
    fn ensemble_rejects_tiny_inputs() {
        assert!(run_ensemble(Space::Arm2, 10, 1, &[Observable::TotalCurvature], 1, &Sequential).is_err());
        assert!(run_ensemble(Space::Arm2, 2, 10, &[Observable::TotalCurvature], 1, &Sequential).is_err());
        assert!(covariance_partition(Space::Pol2, 6, 10, 1, &Sequential).is_err());
    }

    #[test]
    fn summary_consistency() {
        let ens = run_ensemble(Space::Pol2, 12, 3000, &[Observable::TotalCurvature, Observable::TurningAngle(0)], 5, &Sequential).unwrap();
        let s = ens.summary();
        assert_eq!(s.count, 3000);
        for r in &s.records {
            assert!(r.variance >= 0.0);
            assert!((r.std_error - (r.variance / 3000.0).sqrt()).abs() < 1e-15);
        }
        // Closed polygons have total curvature at least 2 pi.
        assert!(ens.column("kappa").unwrap().iter().all(|&k| k >= 2.0 * core::f64::consts::PI - 1e-9));
    }

    #[test]
    fn resolution_guard() {
        let err = estimate_tv(Space::Pol2, Space::Arm2, 20, 2, 10_000, 8, 1, &Sequential).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }));
        assert!(estimate_tv(Space::Pol2, Space::Arm3, 20, 1, 10_000, 4, 1, &Sequential).is_err());
    }

    #[test]
    fn grid_cells_round_trip() {
        let mut rng = SeedStream::new(1, 0).rng();
        let a: Vec<f64> = (0..2000).map(|i| (i % 7) as f64).collect();
        let g = GridHistogram::build(2, 4, &a, &a, &mut rng).unwrap();
        assert_eq!(g.counts_a.len(), 16);
        assert_eq!(g.tv_estimate, 0.0);
        assert_eq!(g.cell_coords(7), vec![1, 3]);
        let total: f64 = g.frequencies().iter().map(|f| f.1).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
