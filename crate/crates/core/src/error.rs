use thiserror::Error;

/// Errors raised by the sampling, geometry, bound and density routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(&'static str),
    #[error("invalid size: {0}")]
    InvalidSize(&'static str),
    #[error("degenerate edge (norm below 1e-14)")]
    DegenerateEdge,
    #[error("degenerate torsion: neighbouring edge parallel to the middle edge")]
    DegenerateTorsion,
    #[error("torsion requires spatial polygons")]
    NotSpatial,
    #[error("bound undefined: {0}")]
    BoundUndefined(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("outside support: {0}")]
    Support(&'static str),
    #[error("histogram resolution too fine: {cells} cells for {samples} samples")]
    Resolution { cells: u64, samples: usize },
    #[error("{excluded} of {total} samples excluded as degenerate")]
    Reliability { excluded: usize, total: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
