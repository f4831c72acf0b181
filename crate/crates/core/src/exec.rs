//! Execution strategy for the data-parallel hot paths.
//!
//! Every parallel reduction here merges partial results by exact rational
//! addition, so the outcome never depends on the strategy or thread count.

/// How hot loops are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs sequentially.
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this strategy will actually run on multiple threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..len` and folds the results with `merge`, starting each
    /// chunk from `init()`.
    pub fn map_reduce<T, I, F, M>(self, len: usize, init: I, f: F, merge: M) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, usize) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..len)
                .into_par_iter()
                .fold(&init, |mut acc, i| {
                    f(&mut acc, i);
                    acc
                })
                .reduce(&init, &merge);
        }
        let _ = &merge;
        let mut acc = init();
        for i in 0..len {
            f(&mut acc, i);
        }
        acc
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}
