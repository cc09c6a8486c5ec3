//! Laws of turning and torsion angles on sampled arms and polygons.

use std::f64::consts::PI;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use symmpoly_core::geometry::{torsion_angles, total_curvature, turning_angles};
use symmpoly_core::lab::{run_ensemble, Observable, Sequential};
use symmpoly_core::stats::{correlation, mean, variance};
use symmpoly_core::{SeedStream, Space};

const N: usize = 100_000;

fn se(xs: &[f64]) -> f64 {
    (variance(xs) / xs.len() as f64).sqrt()
}

fn chi2_uniform(xs: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    let bins = 36;
    let mut counts = [0usize; 36];
    for &x in xs {
        counts[((((x - lo) / (hi - lo)) * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let e = xs.len() as f64 / bins as f64;
    let stat = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    (stat, ChiSquared::new(35.0).unwrap().inverse_cdf(0.999))
}

#[test]
fn planar_arm_turning_angles_are_uniform() {
    let mut rng = SeedStream::new(7, 200).rng();
    let theta: Vec<f64> = (0..N).map(|_| turning_angles(&Space::Arm2.sample(20, &mut rng).unwrap()).unwrap()[4]).collect();
    let (stat, crit) = chi2_uniform(&theta, 0.0, PI);
    assert!(stat < crit, "chi2 {stat}");
    assert!((mean(&theta) - PI / 2.0).abs() <= 4.0 * se(&theta));
    // E[theta^2] = int_0^pi t^2 dt / pi = pi^2 / 3.
    let sq: Vec<f64> = theta.iter().map(|t| t * t).collect();
    assert!((mean(&sq) - PI * PI / 3.0).abs() <= 4.0 * se(&sq));
}

#[test]
fn planar_arm_total_curvature_mean() {
    let n = 100;
    let ens = run_ensemble(Space::Arm2, n, N, &[Observable::TotalCurvature], 7, &Sequential).unwrap();
    let s = ens.summary();
    let k = s.get("kappa").unwrap();
    assert!((k.mean - (n - 1) as f64 * PI / 2.0).abs() <= 4.0 * k.std_error);
}

#[test]
fn spatial_arm_torsion_is_uniform_and_uncorrelated() {
    let mut rng = SeedStream::new(7, 201).rng();
    let taus: Vec<Vec<f64>> = (0..N).map(|_| torsion_angles(&Space::Arm3.sample(12, &mut rng).unwrap()).unwrap()).collect();
    let t1: Vec<f64> = taus.iter().map(|t| t[0]).collect();
    let t2: Vec<f64> = taus.iter().map(|t| t[1]).collect();
    let t5: Vec<f64> = taus.iter().map(|t| t[4]).collect();
    let (stat, crit) = chi2_uniform(&t1, -PI, PI);
    assert!(stat < crit, "chi2 {stat}");
    let bound = 4.0 / (N as f64).sqrt();
    assert!(correlation(&t1, &t2).abs() <= bound);
    assert!(correlation(&t1, &t5).abs() <= bound);
    assert!((variance(&t1) / (PI * PI / 3.0) - 1.0).abs() < 0.05);
}

#[test]
fn spatial_arm_total_torsion() {
    let n = 50;
    let ens = run_ensemble(Space::Arm3, n, N, &[Observable::TotalTorsion], 7, &Sequential).unwrap();
    let t = ens.summary().get("tau_total").unwrap().clone();
    assert!(t.mean.abs() <= 4.0 * t.std_error);
    let expected = (n - 2) as f64 * PI * PI / 3.0;
    assert!((t.variance / expected - 1.0).abs() < 0.05, "{} vs {expected}", t.variance);
}

#[test]
fn closed_curvature_lies_between_trivial_bounds() {
    let mut rng = SeedStream::new(7, 202).rng();
    for space in [Space::Pol2, Space::Pol3] {
        for _ in 0..2000 {
            let n = 12;
            let k = total_curvature(&space.sample(n, &mut rng).unwrap()).unwrap();
            assert!(k >= 2.0 * PI - 1e-9 && k <= n as f64 * PI);
        }
    }
}

#[test]
fn ensembles_are_reproducible() {
    let obs = [Observable::TotalCurvature, Observable::TurningAngle(0)];
    let a = run_ensemble(Space::Pol3, 20, 5000, &obs, 42, &Sequential).unwrap();
    let b = run_ensemble(Space::Pol3, 20, 5000, &obs, 42, &Sequential).unwrap();
    assert_eq!(a.columns, b.columns);
    let c = run_ensemble(Space::Pol3, 20, 5000, &obs, 43, &Sequential).unwrap();
    assert_ne!(a.columns, c.columns);
}
