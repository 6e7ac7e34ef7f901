//! Execution strategy for the data-parallel inner loops.
//!
//! Every parallel path produces per-item partial results that are combined in
//! index order, so outputs are bitwise identical between [`Execution::Sequential`]
//! and [`Execution::Parallel`] and independent of the thread schedule.

/// How batch loops (rows, frames, channels) are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled, otherwise
    /// falls back to sequential execution.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Evaluates `f(i)` for `i in 0..n` and returns the results in index order.
    pub(crate) fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Runs `f(chunk_index, chunk)` over consecutive `chunk_len`-sized chunks.
    pub(crate) fn for_each_chunk_mut<T, F>(self, data: &mut [T], chunk_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        if chunk_len == 0 {
            return;
        }
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                data.par_chunks_mut(chunk_len)
                    .enumerate()
                    .for_each(|(i, c)| f(i, c));
            }
            _ => data
                .chunks_mut(chunk_len)
                .enumerate()
                .for_each(|(i, c)| f(i, c)),
        }
    }
}

/// Caps the global worker pool from `POSECLONE_THREADS` (0 or unset = automatic).
///
/// Returns the number of threads requested, if any. Has no effect without the
/// `parallel` feature or once the global pool has been initialised.
pub fn configure_threads_from_env() -> Option<usize> {
    let n: usize = std::env::var("POSECLONE_THREADS").ok()?.trim().parse().ok()?;
    if n == 0 {
        return None;
    }
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Some(n)
}

/// Sums in index order; used to combine partial sums deterministically.
pub(crate) fn ordered_sum(parts: &[f64]) -> f64 {
    parts.iter().fold(0.0, |acc, v| acc + v)
}
