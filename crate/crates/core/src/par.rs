//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) work is spread over the current rayon
//! pool; without it everything runs on the calling thread. All reductions are
//! integer sums or order-preserving collects, so results never depend on the
//! number of workers.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ranges shorter than this are summed sequentially.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: u64 = 1 << 13;

/// `sum_{i < n} f(i)`
pub fn sum_range<F>(n: u64, f: F) -> i64
where
    F: Fn(u64) -> i64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= MIN_PARALLEL_LEN {
        let chunk = MIN_PARALLEL_LEN / 4;
        return (0..n.div_ceil(chunk))
            .into_par_iter()
            .map(|c| (c * chunk..n.min((c + 1) * chunk)).map(&f).sum::<i64>())
            .sum();
    }
    (0..n).map(f).sum()
}

/// `items.map(f).collect()`, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Run `op` on a dedicated pool of `jobs` workers, or on the global pool when
/// `jobs` is `None`. A no-op wrapper without the `parallel` feature.
pub fn with_jobs<R, F>(jobs: Option<usize>, op: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| crate::error::Error::InvalidArgument(e.to_string()))?;
        return Ok(pool.install(op));
    }
    let _ = jobs;
    Ok(op())
}

/// Whether this build can run work in parallel.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
