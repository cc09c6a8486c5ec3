//! Random arms and closed polygons of perimeter 2.
//!
//! Planar samples come from the squaring map `z -> z^2` applied
//! coordinatewise to `C^n`; spatial samples from the Hopf map
//! `q -> conj(q) i q` applied coordinatewise to `H^n`. Both maps send
//! squared norms to edge lengths, so a point of norm `sqrt(2)` yields total
//! length 2.
//!
//! * Arms: the point is uniform on `S^{2n-1}(sqrt 2)` (planar) or
//!   `S^{4n-1}(sqrt 2)` (spatial).
//! * Closed polygons: the point is `a + i b` for a Haar 2-frame `(a, b)` of
//!   `R^n` (planar), or `a + b j` for a Haar 2-frame of `C^n` (spatial); such
//!   a point has norm `sqrt 2`, and orthonormality of the frame is exactly
//!   closure.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::haar::{sample_frame2, sample_sphere_into, ScalarKind};
use crate::quaternion::Quaternion;

/// An edge vector. Planar edges keep a zero third coordinate.
pub type Edge = [f64; 3];

/// Which polygon space a sample comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Arm2,
    Pol2,
    Arm3,
    Pol3,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::Arm2, Space::Pol2, Space::Arm3, Space::Pol3];

    pub fn dim(self) -> usize {
        match self {
            Space::Arm2 | Space::Pol2 => 2,
            Space::Arm3 | Space::Pol3 => 3,
        }
    }

    pub fn closed(self) -> bool {
        matches!(self, Space::Pol2 | Space::Pol3)
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Arm2 => "arm2",
            Space::Pol2 => "pol2",
            Space::Arm3 => "arm3",
            Space::Pol3 => "pol3",
        }
    }

    pub fn parse(s: &str) -> Option<Space> {
        Space::ALL.into_iter().find(|sp| sp.name() == s)
    }

    pub fn sample<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Result<Polygon> {
        if self.closed() {
            sample_pol(self.dim(), n, rng)
        } else {
            sample_arm(self.dim(), n, rng)
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered list of edge vectors in `R^2` or `R^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    dim: usize,
    closed: bool,
    edges: Vec<Edge>,
}

impl Polygon {
    pub fn new(dim: usize, closed: bool, edges: Vec<Edge>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidDimension("polygons live in R^2 or R^3"));
        }
        if edges.is_empty() {
            return Err(Error::InvalidSize("polygon needs at least one edge"));
        }
        if dim == 2 && edges.iter().any(|e| e[2] != 0.0) {
            return Err(Error::InvalidDimension("planar edge with nonzero z"));
        }
        Ok(Polygon { dim, closed, edges })
    }

    /// Planar polygon from `(x, y)` pairs.
    pub fn planar(closed: bool, edges: &[[f64; 2]]) -> Result<Self> {
        Polygon::new(2, closed, edges.iter().map(|e| [e[0], e[1], 0.0]).collect())
    }

    pub fn spatial(closed: bool, edges: Vec<Edge>) -> Result<Self> {
        Polygon::new(3, closed, edges)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(norm).sum()
    }

    pub fn closure_residual(&self) -> f64 {
        let s = self.edges.iter().fold([0.0; 3], |acc, e| add(&acc, e));
        norm(&s)
    }

    /// Partial sums of the edges starting at the origin (`n + 1` points).
    pub fn vertices(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut p = [0.0; 3];
        out.push(p);
        for e in &self.edges {
            p = add(&p, e);
            out.push(p);
        }
        out
    }

    /// First `k` edges flattened into a `dim * k` vector.
    pub fn segment(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 || k > self.n() {
            return Err(Error::InvalidSize("segment length must be in 1..=n"));
        }
        Ok(self.edges[..k].iter().flat_map(|e| e[..self.dim].iter().copied()).collect())
    }
}

pub(crate) fn norm(v: &Edge) -> f64 {
    libm::sqrt(dot(v, v))
}

pub(crate) fn dot(u: &Edge, v: &Edge) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn add(u: &Edge, v: &Edge) -> Edge {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

/// `z_i -> z_i^2`, with complex numbers given as `(re, im)`.
pub fn square_map(z: &[(f64, f64)]) -> Vec<Edge> {
    z.iter().map(|&(re, im)| [re * re - im * im, 2.0 * re * im, 0.0]).collect()
}

/// `q_i -> conj(q_i) i q_i`, read off the `(i, j, k)` components.
pub fn hopf_map(q: &[Quaternion]) -> Vec<Edge> {
    q.iter().map(|&qi| hopf(qi)).collect()
}

#[inline]
fn hopf(q: Quaternion) -> Edge {
    let h = q.conj() * Quaternion::I * q;
    debug_assert!(h.w.abs() <= 1e-12 * (1.0 + q.norm_sqr()));
    h.vector()
}

/// Open polygon from the symmetric measure on `Arm_dim(n)`.
pub fn sample_arm<R: Rng + ?Sized>(dim: usize, n: usize, rng: &mut R) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::InvalidSize("arms need n >= 3"));
    }
    let edges = match dim {
        2 => {
            let mut x = vec![0.0; 2 * n];
            sample_sphere_into(&mut x, SQRT_2, rng)?;
            let z: Vec<(f64, f64)> = x.chunks_exact(2).map(|c| (c[0], c[1])).collect();
            square_map(&z)
        }
        3 => {
            let mut x = vec![0.0; 4 * n];
            sample_sphere_into(&mut x, SQRT_2, rng)?;
            x.chunks_exact(4).map(|c| hopf(Quaternion::new(c[0], c[1], c[2], c[3]))).collect()
        }
        _ => return Err(Error::InvalidDimension("polygons live in R^2 or R^3")),
    };
    Ok(Polygon { dim, closed: false, edges })
}

/// Closed polygon from the symmetric measure on `Pol_dim(n)`.
pub fn sample_pol<R: Rng + ?Sized>(dim: usize, n: usize, rng: &mut R) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::InvalidSize("closed polygons need n >= 3"));
    }
    let edges = match dim {
        2 => {
            let f = sample_frame2(n, ScalarKind::Real, rng)?;
            let z: Vec<(f64, f64)> = f.a.iter().zip(&f.b).map(|(a, b)| (a.re, b.re)).collect();
            square_map(&z)
        }
        3 => {
            let f = sample_frame2(n, ScalarKind::Complex, rng)?;
            f.a.iter()
                .zip(&f.b)
                .map(|(a, b)| hopf(Quaternion::from_complex_pair((a.re, a.im), (b.re, b.im))))
                .collect()
        }
        _ => return Err(Error::InvalidDimension("polygons live in R^2 or R^3")),
    };
    Ok(Polygon { dim, closed: true, edges })
}
