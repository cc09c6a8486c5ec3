//! Parallel ensembles, file formats, the verification suite and the
//! `symmpoly` command line, on top of [`symmpoly_core`].

pub mod cli;
pub mod io;
pub mod parallel;
pub mod verify;

pub use parallel::Parallel;
