use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};
use symmpoly_core::lab::{ChunkExecutor, ChunkOutput};
use symmpoly_core::Result;

/// Runs ensemble chunks on a dedicated rayon pool of `workers` threads.
///
/// Chunk outputs are collected in chunk-index order and every chunk draws
/// from its own substream, so results are identical for any worker count.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    pub fn new(workers: usize) -> std::result::Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(workers.max(1)).thread_name(|i| format!("symmpoly-{i}")).build()?;
        Ok(Parallel { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl ChunkExecutor for Parallel {
    fn run<T, F>(&self, chunks: usize, job: F) -> Result<Vec<ChunkOutput<T>>>
    where
        T: Send,
        F: Fn(usize) -> Result<ChunkOutput<T>> + Sync + Send,
    {
        self.pool.install(|| (0..chunks).into_par_iter().map(job).collect())
    }
}
