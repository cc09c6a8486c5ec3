//! The verification suite: every moment, bound and density claim checked
//! at a fixed seed, one [`Check`] per measured quantity.
//!
//! Criteria are numbered 1 to 10 and can be run one at a time with
//! [`Suite::criterion`]. At [`Level::Desk`] ensembles have 10^5 samples
//! (4 x 10^5 for total-variation estimates); [`Level::Deep`] multiplies
//! both by ten.

use std::f64::consts::PI;

use symmpoly_core::bounds::{self, CurvatureVariance};
use symmpoly_core::densities::{beta_cdf_int, block_density, ratio_argmax_check};
use symmpoly_core::haar::sample_haar_unitary;
use symmpoly_core::lab::{self, covariance_partition, estimate_tv, run_ensemble, ChunkExecutor, Ensemble, EnsembleSpec, Observable, Sequential};
use symmpoly_core::linalg::CMatrix;
use symmpoly_core::quad::integrate;
use symmpoly_core::stats::{self, bootstrap_variance_se, chebyshev_coverage, correlation, ks_distance};
use symmpoly_core::{Error, Result, SeedStream, Space};

use crate::io::{grid_csv, summary_csv};
use crate::Parallel;

pub const DEFAULT_SEED: u64 = 7;
pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=10;

const ROLE_VERIFY: u32 = 0x5E7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Desk,
    Deep,
}

impl Level {
    pub fn scale(self) -> usize {
        match self {
            Level::Desk => 1,
            Level::Deep => 10,
        }
    }

    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "desk" => Some(Level::Desk),
            "deep" => Some(Level::Deep),
            _ => None,
        }
    }
}

/// One measured quantity against its threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(criterion: u8, name: &str, measured: f64, threshold: f64) -> Self {
        Check { criterion, name: name.into(), measured, threshold, pass: measured <= threshold }
    }

    pub fn at_least(criterion: u8, name: &str, measured: f64, threshold: f64) -> Self {
        Check { criterion, name: name.into(), measured, threshold, pass: measured >= threshold }
    }

    pub fn above(criterion: u8, name: &str, measured: f64, threshold: f64) -> Self {
        Check { criterion, name: name.into(), measured, threshold, pass: measured > threshold }
    }
}

/// Mean and standard error of a column.
fn mean_se(xs: &[f64]) -> (f64, f64) {
    (stats::mean(xs), (stats::variance(xs) / xs.len() as f64).sqrt())
}

pub struct Suite<'a, E: ?Sized> {
    seed: u64,
    level: Level,
    exec: &'a E,
}

impl<'a, E: ChunkExecutor + ?Sized> Suite<'a, E> {
    pub fn new(seed: u64, level: Level, exec: &'a E) -> Self {
        Suite { seed, level, exec }
    }

    fn count(&self) -> usize {
        100_000 * self.level.scale()
    }

    fn tv_count(&self) -> usize {
        400_000 * self.level.scale()
    }

    fn ensemble(&self, space: Space, n: usize, obs: &[Observable]) -> Result<Ensemble> {
        run_ensemble(space, n, self.count(), obs, self.seed, self.exec)
    }

    fn column(e: &Ensemble, name: &str) -> Vec<f64> {
        e.column(name).expect("observable present").to_vec()
    }

    pub fn run(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for id in CRITERIA {
            out.extend(self.criterion(id)?);
        }
        Ok(out)
    }

    pub fn criterion(&self, id: u8) -> Result<Vec<Check>> {
        match id {
            1 => self.structural(),
            2 => self.arm_moments(),
            3 => self.closed_curvature(),
            4 => self.transfer(),
            5 => self.tv_bounds(),
            6 => Ok(formula_suite()),
            7 => self.variance_bounds(),
            8 => self.chebyshev(),
            9 => self.densities(),
            10 => self.determinism(),
            _ => Err(Error::Domain("criteria are numbered 1 to 10")),
        }
    }

    fn structural(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for space in [Space::Pol2, Space::Pol3] {
            let spec = EnsembleSpec::new(space, 50, 1000, self.seed);
            let (rows, _) = lab::collect(&spec, self.exec, |p| Ok((p.closure_residual(), (p.perimeter() - 2.0).abs())))?;
            let closure = rows.iter().map(|r| r.0).fold(0.0, f64::max);
            let perimeter = rows.iter().map(|r| r.1).fold(0.0, f64::max);
            out.push(Check::at_most(1, &format!("{space}_max_closure_residual"), closure, 1e-10));
            out.push(Check::at_most(1, &format!("{space}_max_perimeter_error"), perimeter, 1e-10));
        }
        Ok(out)
    }

    fn arm_moments(&self) -> Result<Vec<Check>> {
        let planar = self.ensemble(Space::Arm2, 100, &[Observable::TurningAngle(0)])?;
        let theta = Self::column(&planar, "theta_1");
        let (m, se) = mean_se(&theta);
        let sq: Vec<f64> = theta.iter().map(|t| t * t).collect();
        let (m2, se2) = mean_se(&sq);

        let spatial = self.ensemble(Space::Arm3, 50, &[Observable::TorsionAngle(0), Observable::TorsionAngle(2)])?;
        let tau1 = Self::column(&spatial, "tau_1");
        let tau3 = Self::column(&spatial, "tau_3");
        let (mt, set) = mean_se(&tau1);
        let third = PI * PI / 3.0;
        Ok(vec![
            Check::at_most(2, "arm2_theta1_mean_dev", (m - PI / 2.0).abs(), 4.0 * se),
            Check::at_most(2, "arm2_theta1_sq_mean_dev", (m2 - third).abs(), 4.0 * se2),
            Check::at_most(2, "arm3_tau1_mean_dev", mt.abs(), 4.0 * set),
            Check::at_most(2, "arm3_tau1_var_rel_dev", (stats::variance(&tau1) / third - 1.0).abs(), 0.05),
            Check::at_most(2, "arm3_tau1_tau3_corr", correlation(&tau1, &tau3).abs(), 4.0 / (tau1.len() as f64).sqrt()),
        ])
    }

    fn closed_curvature(&self) -> Result<Vec<Check>> {
        let n = 50usize;
        let spatial = self.ensemble(Space::Pol3, n, &[Observable::TotalCurvature])?;
        let (m3, se3) = mean_se(&Self::column(&spatial, "kappa"));
        let nf = n as f64;
        let expected = PI / 2.0 * nf + PI / 4.0 * (2.0 * nf) / (2.0 * nf - 3.0);

        let n = 100u64;
        let planar = self.ensemble(Space::Pol2, n as usize, &[Observable::TotalCurvature])?;
        let (m2, se2) = mean_se(&Self::column(&planar, "kappa"));
        let excess = m2 - n as f64 * PI / 2.0;
        let cap = n as f64 * PI * bounds::b2(2, n)?;
        Ok(vec![
            Check::at_most(3, "pol3_kappa_mean_dev", (m3 - expected).abs(), 4.0 * se3),
            Check::at_least(3, "pol2_kappa_excess_min", excess, 0.0),
            Check::at_most(3, "pol2_kappa_excess_max", excess, cap + 4.0 * se2),
        ])
    }

    fn transfer(&self) -> Result<Vec<Check>> {
        let n = 100usize;
        let theta = [Observable::TurningAngle(0)];
        let (mp, sp) = mean_se(&Self::column(&self.ensemble(Space::Pol2, n, &theta)?, "theta_1"));
        let (ma, sa) = mean_se(&Self::column(&self.ensemble(Space::Arm2, n, &theta)?, "theta_1"));
        let tau = [Observable::TorsionAngle(0)];
        let (tp, tsp) = mean_se(&Self::column(&self.ensemble(Space::Pol3, n, &tau)?, "tau_1"));
        let (ta, tsa) = mean_se(&Self::column(&self.ensemble(Space::Arm3, n, &tau)?, "tau_1"));
        let gap2 = bounds::expectation_transfer_gap(PI, 2, 2, n as u64)?;
        let gap3 = bounds::expectation_transfer_gap(PI, 3, 3, n as u64)?;
        Ok(vec![
            Check::at_most(4, "theta1_pol2_vs_arm2", (mp - ma).abs(), gap2 + 4.0 * (sp + sa)),
            Check::at_most(4, "tau1_pol3_vs_arm3", (tp - ta).abs(), gap3 + 4.0 * (tsp + tsa)),
        ])
    }

    fn tv_bounds(&self) -> Result<Vec<Check>> {
        let n = 100;
        let count = self.tv_count();
        let tv = |a: Space, b: Space, bins: usize| estimate_tv(a, b, n, 1, count, bins, self.seed, self.exec);
        let planar = tv(Space::Pol2, Space::Arm2, 12)?;
        let spatial = tv(Space::Pol3, Space::Arm3, 8)?;
        let planar_null = tv(Space::Arm2, Space::Arm2, 12)?;
        let spatial_null = tv(Space::Arm3, Space::Arm3, 8)?;
        Ok(vec![
            Check::at_most(5, "tv_pol2_arm2_excess", planar.tv_estimate - planar.null_calibration, bounds::b2(1, n as u64)?),
            Check::at_most(5, "tv_pol3_arm3_excess", spatial.tv_estimate - spatial.null_calibration, bounds::b3(1, n as u64)?),
            Check::at_most(5, "tv_arm2_same_law", planar_null.tv_estimate, planar_null.null_calibration + 0.01),
            Check::at_most(5, "tv_arm3_same_law", spatial_null.tv_estimate, spatial_null.null_calibration + 0.01),
        ])
    }

    fn variance_bounds(&self) -> Result<Vec<Check>> {
        let mut rng = SeedStream::substream(self.seed, ROLE_VERIFY, 7).rng();
        let kappa = Self::column(&self.ensemble(Space::Pol2, 200, &[Observable::TotalCurvature])?, "kappa");
        let var_k = stats::variance(&kappa);
        let se_k = bootstrap_variance_se(&kappa, lab::BOOTSTRAP_RESAMPLES, &mut rng);
        let bound_k = bounds::curvature_variance_bound(200, CurvatureVariance::Simple)?;

        let tau = Self::column(&self.ensemble(Space::Pol3, 100, &[Observable::TotalTorsion])?, "tau_total");
        let var_t = stats::variance(&tau);
        let se_t = bootstrap_variance_se(&tau, lab::BOOTSTRAP_RESAMPLES, &mut rng);
        let bound_t = bounds::torsion_variance_bound(100)?;

        let part = covariance_partition(Space::Pol2, 200, self.count(), self.seed, self.exec)?;
        Ok(vec![
            Check::at_most(7, "pol2_kappa_var", var_k, bound_k + 4.0 * se_k),
            Check::at_most(7, "pol3_tau_total_var", var_t, bound_t + 4.0 * se_t),
            Check::at_most(
                7,
                "pol2_partition_vs_direct_var",
                (part.assembled_variance - part.direct_variance).abs(),
                4.0 * part.se_assembled_minus_direct,
            ),
        ])
    }

    fn chebyshev(&self) -> Result<Vec<Check>> {
        let n = 100usize;
        let tau = Self::column(&self.ensemble(Space::Arm3, n, &[Observable::TotalTorsion])?, "tau_total");
        let cut = PI * (n as f64).sqrt();
        let outside_tau = chebyshev_coverage(&tau, -cut, cut);

        let n = 200u64;
        let kappa = Self::column(&self.ensemble(Space::Pol2, n as usize, &[Observable::TotalCurvature])?, "kappa");
        let var = bounds::curvature_variance_bound(n, CurvatureVariance::Simple)?;
        let base = bounds::chebyshev_interval(n as f64 * PI / 2.0, var, 2f64.sqrt())?;
        // The mean lies in [n pi/2, n pi/2 + n pi B_2(2, n)].
        let shift = n as f64 * PI * bounds::b2(2, n)?;
        let outside_kappa = chebyshev_coverage(&kappa, base.lo, base.hi + shift);
        Ok(vec![
            Check::at_most(8, "arm3_tau_total_outside_pi_sqrt_n", outside_tau, 1.0 / 3.0),
            Check::at_most(8, "pol2_kappa_outside_interval", outside_kappa, 0.5),
        ])
    }

    fn densities(&self) -> Result<Vec<Check>> {
        let mut out = density_checks()?;
        let n = 10;
        let mut rng = SeedStream::substream(self.seed, ROLE_VERIFY, 9).rng();
        let mut stat = Vec::with_capacity(self.count());
        for _ in 0..self.count() {
            stat.push(sample_haar_unitary(n, &mut rng)?[(0, 0)].norm_sqr());
        }
        let ks = ks_distance(&stat, |x| beta_cdf_int(1, n as u32 - 1, x));
        out.insert(1, Check::at_most(9, "haar_block_beta_ks", ks, 0.01));
        Ok(out)
    }

    fn determinism(&self) -> Result<Vec<Check>> {
        let pool = Parallel::new(4).map_err(|_| Error::Domain("could not start worker pool"))?;
        let obs = [Observable::TotalCurvature, Observable::TurningAngle(0), Observable::TorsionAngle(0)];
        let render = |exec: &dyn Fn(&[Observable]) -> Result<Ensemble>| -> Result<String> { Ok(summary_csv(&exec(&obs)?.summary())) };
        let seq = render(&|o| run_ensemble(Space::Pol3, 30, 20_000, o, self.seed, &Sequential))?;
        let par = render(&|o| run_ensemble(Space::Pol3, 30, 20_000, o, self.seed, &pool))?;
        let grid_seq = grid_csv(&estimate_tv(Space::Pol2, Space::Arm2, 30, 1, 20_000, 8, self.seed, &Sequential)?);
        let grid_par = grid_csv(&estimate_tv(Space::Pol2, Space::Arm2, 30, 1, 20_000, 8, self.seed, &pool)?);
        let differing = |a: &str, b: &str| a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
        Ok(vec![
            Check::at_most(10, "summary_bytes_differing_1_vs_4_workers", differing(&seq, &par) as f64, 0.0),
            Check::at_most(10, "grid_bytes_differing_1_vs_4_workers", differing(&grid_seq, &grid_par) as f64, 0.0),
        ])
    }
}

/// Exact-arithmetic checks of the bound formulas.
pub fn formula_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let (b2, b3) = (|k, n| bounds::b2(k, n).unwrap(), |k, n| bounds::b3(k, n).unwrap());

    for n in [100u64, 1000] {
        let max_k = n - 5;
        let drops2 = (1..max_k).filter(|&k| b2(k + 1, n) <= b2(k, n)).count();
        let drops3 = (1..max_k).filter(|&k| b3(k + 1, n) <= b3(k, n)).count();
        out.push(Check::at_most(6, &format!("b2_monotone_violations_n{n}"), drops2 as f64, 0.0));
        out.push(Check::at_most(6, &format!("b3_monotone_violations_n{n}"), drops3 as f64, 0.0));
        let margin = (1..n.div_ceil(2)).filter(|&k| k + 5 <= n).map(|k| b2(k, n) - (6 * k + 19) as f64 / n as f64).fold(f64::INFINITY, f64::min);
        out.push(Check::above(6, &format!("b2_minus_asymptote_min_n{n}"), margin, 0.0));
    }

    let big = 1_000_000u64;
    let slope2 = (1..=10).map(|k| (big as f64 * b2(k, big) - (6 * k + 19) as f64).abs()).fold(0.0, f64::max);
    let slope3 = (2..=10).map(|k| (big as f64 * b3(k, big) - (10 * k) as f64 - 17.5).abs()).fold(0.0, f64::max);
    out.push(Check::at_most(6, "b2_slope_dev_n1e6", slope2, 0.01));
    out.push(Check::at_most(6, "b3_slope_dev_n1e6", slope3, 0.01));

    let a2 = bounds::alpha_threshold(2).unwrap();
    let a3 = bounds::alpha_threshold(3).unwrap();
    out.push(Check::at_most(6, "alpha_threshold_2_dev", (a2 - (4.0 - 11f64.sqrt()) / 5.0).abs(), 1e-9));
    out.push(Check::at_most(6, "alpha_threshold_3_dev", (a3 - 0.08235533).abs(), 1e-6));

    let mut worst: f64 = 0.0;
    for n in [100u64, 1000, big] {
        for k in 2..=20 {
            let planar = bounds::ortho_block_bound(k, 2, n).unwrap() + bounds::sphere_marginal_bound(2 * k, 2 * n).unwrap();
            let spatial = bounds::unitary_block_bound(k, 2, n).unwrap() + bounds::sphere_marginal_bound(4 * k, 4 * n).unwrap();
            worst = worst.max((planar - b2(k, n)).abs()).max((spatial - b3(k, n)).abs());
        }
        let k1 = bounds::unitary_block_bound(1, 2, n).unwrap() + bounds::sphere_marginal_bound(4, 4 * n).unwrap();
        worst = worst.max((k1 - b3(1, n)).abs());
    }
    out.push(Check::at_most(6, "assembly_identity_max_dev", worst, 1e-12));
    out
}

/// Density normalization and the Haar-block ratio maximizer.
pub fn density_checks() -> Result<Vec<Check>> {
    let n = 10;
    let total = integrate(
        |rho| {
            if rho >= 1.0 {
                return 0.0;
            }
            let z = CMatrix::from_fn(1, 1, |_, _| rho.into());
            2.0 * PI * rho * block_density(&z, n).unwrap()
        },
        0.0,
        1.0,
        1e-12,
    );
    let mut out = vec![Check::at_most(9, "block_density_normalization_dev", (total - 1.0).abs(), 1e-8)];
    for (r, expected) in [(1usize, 0.10), (2, 0.15)] {
        let n = 20;
        let scan = ratio_argmax_check(r, n, 100_000)?;
        out.push(Check::at_most(9, &format!("ratio_argmax_r{r}_dev"), (scan.argmax - expected).abs(), 1e-5));
        let cap = 1.0 / (1.0 - (r + 1) as f64 / n as f64);
        out.push(Check::at_most(9, &format!("ratio_max_r{r}"), scan.max_ratio, cap));
    }
    Ok(out)
}
