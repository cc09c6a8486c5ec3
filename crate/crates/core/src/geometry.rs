//! Turning angles, torsion angles and functionals of consecutive edges.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::polygon::{dot, norm, Edge, Polygon};

const MIN_EDGE: f64 = 1e-14;
const MIN_PROJECTION: f64 = 1e-12;

/// Unsigned angle in `[0, pi]` between consecutive edges.
pub fn turning_angle(u: &Edge, v: &Edge) -> Result<f64> {
    let (nu, nv) = (norm(u), norm(v));
    if nu <= MIN_EDGE || nv <= MIN_EDGE {
        return Err(Error::DegenerateEdge);
    }
    Ok(libm::acos((dot(u, v) / (nu * nv)).clamp(-1.0, 1.0)))
}

fn cross(u: &Edge, v: &Edge) -> Edge {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

fn reject(v: &Edge, unit: &Edge) -> Edge {
    let c = dot(v, unit);
    [v[0] - c * unit[0], v[1] - c * unit[1], v[2] - c * unit[2]]
}

/// Dihedral angle at the middle edge `b`, in `(-pi, pi]`.
///
/// With `u`, `w` the projections of `a`, `c` onto the plane normal to `b`,
/// `x = u/|u|` and `y = b/|b| x x`, the angle of `w` in the `(x, y)` frame is
/// `phi` and the torsion is `pi - phi`. A planar triple whose outer edges
/// point opposite ways across `b` (both turns in the same sense) has torsion
/// 0; one whose outer edges are parallel has torsion `pi`.
pub fn torsion_angle(a: &Edge, b: &Edge, c: &Edge) -> Result<f64> {
    let nb = norm(b);
    if nb <= MIN_EDGE {
        return Err(Error::DegenerateEdge);
    }
    let bh = [b[0] / nb, b[1] / nb, b[2] / nb];
    let u = reject(a, &bh);
    let w = reject(c, &bh);
    let (nu, nw) = (norm(&u), norm(&w));
    if nu <= MIN_PROJECTION || nw <= MIN_PROJECTION {
        return Err(Error::DegenerateTorsion);
    }
    let xh = [u[0] / nu, u[1] / nu, u[2] / nu];
    let yh = cross(&bh, &xh);
    let phi = libm::atan2(dot(&w, &yh), dot(&w, &xh));
    let tau = PI - phi;
    Ok(if tau > PI { tau - 2.0 * PI } else { tau })
}

/// Sum of turning angles: `n` cyclic angles for closed polygons, the `n - 1`
/// interior angles for arms.
pub fn total_curvature(p: &Polygon) -> Result<f64> {
    turning_angles(p)?.into_iter().try_fold(0.0, |acc, t| Ok(acc + t))
}

/// All turning angles of `p`; angle `i` sits between edges `i` and `i + 1`.
pub fn turning_angles(p: &Polygon) -> Result<Vec<f64>> {
    let e = p.edges();
    let n = e.len();
    let count = if p.is_closed() { n } else { n.saturating_sub(1) };
    (0..count).map(|i| turning_angle(&e[i], &e[(i + 1) % n])).collect()
}

/// All torsion angles of a spatial polygon; angle `i` is measured at edge
/// `i + 1` for arms (interior edges only) and at edge `i` for closed
/// polygons (cyclic neighbours).
pub fn torsion_angles(p: &Polygon) -> Result<Vec<f64>> {
    if p.dim() != 3 {
        return Err(Error::NotSpatial);
    }
    let e = p.edges();
    let n = e.len();
    if p.is_closed() {
        (0..n).map(|i| torsion_angle(&e[(i + n - 1) % n], &e[i], &e[(i + 1) % n])).collect()
    } else {
        (1..n.saturating_sub(1)).map(|i| torsion_angle(&e[i - 1], &e[i], &e[i + 1])).collect()
    }
}

pub fn total_torsion(p: &Polygon) -> Result<f64> {
    Ok(torsion_angles(p)?.iter().sum())
}

/// A real function of `width()` consecutive edges with `|f| <= bound()`.
pub trait LocalFunctional {
    fn width(&self) -> usize;
    fn bound(&self) -> f64;
    fn eval(&self, window: &[Edge]) -> Result<f64>;
}

/// `theta` between the two edges of the window.
#[derive(Debug, Clone, Copy, Default)]
pub struct TurningAngle;

impl LocalFunctional for TurningAngle {
    fn width(&self) -> usize {
        2
    }
    fn bound(&self) -> f64 {
        PI
    }
    fn eval(&self, w: &[Edge]) -> Result<f64> {
        turning_angle(&w[0], &w[1])
    }
}

/// Product of the two consecutive turning angles of a three-edge window.
#[derive(Debug, Clone, Copy, Default)]
pub struct TurningProduct;

impl LocalFunctional for TurningProduct {
    fn width(&self) -> usize {
        3
    }
    fn bound(&self) -> f64 {
        PI * PI
    }
    fn eval(&self, w: &[Edge]) -> Result<f64> {
        Ok(turning_angle(&w[0], &w[1])? * turning_angle(&w[1], &w[2])?)
    }
}

/// Torsion at the middle edge of a three-edge window.
#[derive(Debug, Clone, Copy, Default)]
pub struct TorsionAngle;

impl LocalFunctional for TorsionAngle {
    fn width(&self) -> usize {
        3
    }
    fn bound(&self) -> f64 {
        PI
    }
    fn eval(&self, w: &[Edge]) -> Result<f64> {
        torsion_angle(&w[0], &w[1], &w[2])
    }
}

/// Length of the first edge of the window.
#[derive(Debug, Clone, Copy)]
pub struct EdgeLength {
    pub width: usize,
}

impl LocalFunctional for EdgeLength {
    fn width(&self) -> usize {
        self.width
    }
    fn bound(&self) -> f64 {
        2.0
    }
    fn eval(&self, w: &[Edge]) -> Result<f64> {
        Ok(norm(&w[0]))
    }
}

/// Adapts a closure into a [`LocalFunctional`].
pub struct FnLocal<F> {
    pub width: usize,
    pub bound: f64,
    pub f: F,
}

impl<F: Fn(&[Edge]) -> Result<f64>> LocalFunctional for FnLocal<F> {
    fn width(&self) -> usize {
        self.width
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    fn eval(&self, w: &[Edge]) -> Result<f64> {
        (self.f)(w)
    }
}

/// `f` on every window of consecutive edges: `n` cyclic windows for closed
/// polygons, `n - k + 1` non-wrapping windows for arms.
pub fn sliding_window_apply<F: LocalFunctional + ?Sized>(p: &Polygon, f: &F) -> Result<Vec<f64>> {
    let k = f.width();
    let e = p.edges();
    let n = e.len();
    if k == 0 || k > n {
        return Err(Error::InvalidSize("window wider than polygon"));
    }
    if p.is_closed() {
        let mut buf = Vec::with_capacity(k);
        (0..n)
            .map(|start| {
                buf.clear();
                buf.extend((0..k).map(|j| e[(start + j) % n]));
                f.eval(&buf)
            })
            .collect()
    } else {
        e.windows(k).map(|w| f.eval(w)).collect()
    }
}
