//! Random polygons under the symmetric measure.
//!
//! Open arms and closed polygons of perimeter 2 in the plane and in space
//! are sampled by pushing Haar measure on spheres and Stiefel manifolds
//! through the squaring map (planar) or the Hopf map (spatial). On top of
//! the samplers sit the local geometric functionals (turning and torsion
//! angles), closed-form total-variation bounds between arm and closed
//! polygon marginals, the random-matrix densities those bounds rest on, and
//! the Monte Carlo estimators used to check all of it.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::manual_is_multiple_of)]

extern crate alloc;

pub mod bounds;
pub mod densities;
pub mod error;
pub mod geometry;
pub mod haar;
pub mod lab;
pub mod linalg;
pub mod polygon;
pub mod quad;
pub mod quaternion;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use polygon::{Edge, Polygon, Space};
pub use quaternion::Quaternion;
pub use rng::SeedStream;
