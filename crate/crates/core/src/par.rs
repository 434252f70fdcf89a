//! Data-parallel sweeps over integer ranges.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! work out over rayon's pool; without it every sweep runs sequentially.
//! Results always come back in index order, so callers see the same output
//! regardless of scheduling.

use std::ops::RangeInclusive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run sweeps in parallel.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// `f(i)` for every `i` in `range`, in order.
    pub fn map<T, F>(self, range: RangeInclusive<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
            _ => range.map(f).collect(),
        }
    }

    /// The smallest index whose `f` returns `Some`, together with that value.
    pub fn first_failure<T, F>(self, range: RangeInclusive<u64>, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                range
                    .into_par_iter()
                    .filter_map(|i| f(i).map(|t| (i, t)))
                    .min_by_key(|(i, _)| *i)
            }
            _ => range.filter_map(|i| f(i).map(|t| (i, t))).next(),
        }
    }
}

/// Caps the global worker pool. Only the first call has any effect; returns
/// whether the pool was configured by this call.
pub fn init_thread_pool(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let f = |i: u64| i * i;
        let seq = Execution::Sequential.map(1..=100, f);
        let par = Execution::Parallel.map(1..=100, f);
        assert_eq!(seq, par);
        assert_eq!(seq[9], 100);
    }

    #[test]
    fn first_failure_is_smallest() {
        let f = |i: u64| i.is_multiple_of(7).then_some(i);
        for mode in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(mode.first_failure(1..=100, f), Some((7, 7)));
            assert_eq!(mode.first_failure(1..=6, f), None);
        }
    }
}
