//! Rayon-backed executor. Output order follows the replicate index, so the
//! thread count never changes a result.

use extropy_core::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{AppError, AppResult};

pub struct Rayon {
    pool: Option<ThreadPool>,
}

impl Rayon {
    /// A dedicated pool with `workers` threads, or the global pool for `None`.
    pub fn new(workers: Option<usize>) -> AppResult<Self> {
        let pool = match workers {
            None => None,
            Some(0) => return Err(AppError::Usage("--workers must be at least 1".into())),
            Some(k) => Some(
                ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .map_err(|e| AppError::Usage(format!("cannot start {k} workers: {e}")))?,
            ),
        };
        Ok(Rayon { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.as_ref().map_or_else(rayon::current_num_threads, ThreadPool::current_num_threads)
    }
}

impl Executor for Rayon {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let run = || (0..count).into_par_iter().map(&f).collect();
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }
}
