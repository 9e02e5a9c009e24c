//! Order-preserving data parallelism over slices, capped by `QVF_THREADS`.

use std::sync::OnceLock;
use std::thread;

use rayon::prelude::*;
use rayon::ThreadPool;

/// Worker count: `QVF_THREADS` if set to a positive integer, otherwise the
/// available parallelism.
pub fn thread_count() -> usize {
    std::env::var("QVF_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new().num_threads(thread_count()).build().expect("thread pool")
    })
}

/// `items.iter().map(f).collect()` on a pool of [`thread_count`] workers;
/// the output order matches the input order.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}
