//! Distributional checks of the samplers against independent oracles.

use std::f64::consts::{PI, SQRT_2};

use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};
use symmpoly_core::haar::{sample_frame2, sample_haar_unitary, sample_sphere, ScalarKind};
use symmpoly_core::stats::{ks_distance, mean, variance};
use symmpoly_core::{SeedStream, Space};

const N: usize = 100_000;

fn within_4se(xs: &[f64], target: f64) -> bool {
    let se = (variance(xs) / xs.len() as f64).sqrt();
    (mean(xs) - target).abs() <= 4.0 * se
}

fn chi_square_uniform(samples: &[f64], lo: f64, hi: f64, bins: usize) -> (f64, f64) {
    let mut counts = vec![0usize; bins];
    for &x in samples {
        let b = (((x - lo) / (hi - lo)) * bins as f64) as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let expected = samples.len() as f64 / bins as f64;
    let stat = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.999);
    (stat, critical)
}

#[test]
fn sphere_coordinates_are_centred() {
    let mut rng = SeedStream::new(7, 100).rng();
    let pts: Vec<Vec<f64>> = (0..N).map(|_| sample_sphere(3, 1.0, &mut rng).unwrap()).collect();
    for axis in 0..3 {
        let col: Vec<f64> = pts.iter().map(|p| p[axis]).collect();
        assert!(within_4se(&col, 0.0), "axis {axis}");
    }
}

#[test]
fn sphere_second_moment_is_r2_over_m() {
    let mut rng = SeedStream::new(7, 101).rng();
    let sq: Vec<f64> = (0..N).map(|_| sample_sphere(4, SQRT_2, &mut rng).unwrap()[0].powi(2)).collect();
    assert!(within_4se(&sq, 0.5));
}

#[test]
fn frame_columns_are_uniform_and_exchangeable() {
    let n = 10;
    let mut rng = SeedStream::new(7, 102).rng();
    let frames: Vec<_> = (0..N).map(|_| sample_frame2(n, ScalarKind::Real, &mut rng).unwrap()).collect();
    for slot in 0..n {
        let a2: Vec<f64> = frames.iter().map(|f| f.a[slot].norm_sqr()).collect();
        let b2: Vec<f64> = frames.iter().map(|f| f.b[slot].norm_sqr()).collect();
        assert!(within_4se(&a2, 0.1), "a slot {slot}");
        assert!(within_4se(&b2, 0.1), "b slot {slot}");
    }
}

#[test]
fn complex_frames_are_orthonormal() {
    let mut rng = SeedStream::new(7, 103).rng();
    for _ in 0..1000 {
        let f = sample_frame2(10, ScalarKind::Complex, &mut rng).unwrap();
        let (aa, bb, ab) = f.gram();
        assert!((aa - 1.0).abs() < 1e-12 && (bb - 1.0).abs() < 1e-12 && ab.norm() < 1e-12);
    }
}

#[test]
fn haar_unitary_first_entry() {
    let mut rng = SeedStream::new(7, 104).rng();
    let u11: Vec<f64> = (0..N).map(|_| sample_haar_unitary(10, &mut rng).unwrap()[(0, 0)].norm_sqr()).collect();
    assert!(within_4se(&u11, 0.1));
    // |U_11|^2 ~ Beta(1, n - 1).
    let beta = Beta::new(1.0, 9.0).unwrap();
    assert!(ks_distance(&u11, |x| beta.cdf(x)) < 0.01);
}

#[test]
fn arm_edge_lengths_follow_beta_laws() {
    // |z_1|^2 / 2 of a uniform point on S^{2n-1}(sqrt 2) is Beta(1, n - 1);
    // |q_1|^2 / 2 on S^{4n-1}(sqrt 2) is Beta(2, 2n - 2).
    for (space, n, a, b) in [(Space::Arm2, 10, 1.0, 9.0), (Space::Arm3, 10, 2.0, 18.0)] {
        let mut rng = SeedStream::new(7, 105).rng();
        let half: Vec<f64> = (0..N)
            .map(|_| {
                let e = space.sample(n, &mut rng).unwrap().edges()[0];
                (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt() / 2.0
            })
            .collect();
        let beta = Beta::new(a, b).unwrap();
        let d = ks_distance(&half, |x| beta.cdf(x));
        assert!(d < 0.01, "{space}: KS {d}");
    }
}

#[test]
fn spatial_arm_mean_edge_vanishes() {
    let mut rng = SeedStream::new(7, 106).rng();
    let edges: Vec<[f64; 3]> = (0..N).map(|_| Space::Arm3.sample(50, &mut rng).unwrap().edges()[0]).collect();
    for axis in 0..3 {
        let col: Vec<f64> = edges.iter().map(|e| e[axis]).collect();
        assert!(within_4se(&col, 0.0), "axis {axis}");
    }
}

#[test]
fn planar_arm_directions_are_uniform() {
    let mut rng = SeedStream::new(7, 107).rng();
    let angles: Vec<f64> = (0..N)
        .map(|_| {
            let e = Space::Arm2.sample(20, &mut rng).unwrap().edges()[0];
            e[1].atan2(e[0]).rem_euclid(2.0 * PI)
        })
        .collect();
    let (stat, critical) = chi_square_uniform(&angles, 0.0, 2.0 * PI, 36);
    assert!(stat < critical, "chi2 {stat} >= {critical}");
}

#[test]
fn spatial_arm_directions_are_isotropic() {
    let mut rng = SeedStream::new(7, 108).rng();
    let dirs: Vec<[f64; 3]> = (0..N)
        .map(|_| {
            let e = Space::Arm3.sample(20, &mut rng).unwrap().edges()[0];
            let n = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
            [e[0] / n, e[1] / n, e[2] / n]
        })
        .collect();
    let u = [0.6, -0.0, 0.8];
    let proj: Vec<f64> = dirs.iter().map(|d| (d[0] * u[0] + d[1] * u[1] + d[2] * u[2]).powi(2)).collect();
    assert!(within_4se(&proj, 1.0 / 3.0));
    for axis in 0..3 {
        let col: Vec<f64> = dirs.iter().map(|d| d[axis]).collect();
        assert!(within_4se(&col, 0.0));
    }
}

#[test]
fn closed_planar_edges_are_exchangeable() {
    let n = 50;
    let mut rng = SeedStream::new(7, 109).rng();
    let polys: Vec<_> = (0..N).map(|_| Space::Pol2.sample(n, &mut rng).unwrap()).collect();
    for slot in 0..n {
        let len: Vec<f64> = polys
            .iter()
            .map(|p| {
                let e = p.edges()[slot];
                (e[0] * e[0] + e[1] * e[1]).sqrt()
            })
            .collect();
        assert!(within_4se(&len, 2.0 / n as f64), "slot {slot}");
    }
}

#[test]
fn closed_polygons_close() {
    let mut rng = SeedStream::new(7, 110).rng();
    for space in [Space::Pol2, Space::Pol3] {
        for _ in 0..1000 {
            let p = space.sample(10, &mut rng).unwrap();
            assert!(p.closure_residual() <= 1e-10);
            assert!((p.perimeter() - 2.0).abs() <= 1e-10);
        }
    }
}
