//! Indexed map over independent work items, run on rayon when the
//! `parallel` feature is on and sequentially otherwise.
//!
//! Output order always follows the index, so reductions over the results are
//! independent of scheduling.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
        }
    }
}

/// Runs `f` with at most `threads` worker threads (`None` keeps the global pool).
///
/// Without the `parallel` feature the cap is validated and otherwise ignored.
pub fn with_thread_cap<R, F>(threads: Option<usize>, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    if threads == Some(0) {
        return Err(Error::InvalidArgument("thread count must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        return Ok(pool.install(f));
    }
    Ok(f())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_index_order() {
        let out = Exec::default().map(1000, |i| i * i);
        assert_eq!(out, (0..1000).map(|i| i * i).collect::<Vec<_>>());
        assert_eq!(out, Exec::Sequential.map(1000, |i| i * i));
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(with_thread_cap(Some(0), || ()).is_err());
        assert_eq!(with_thread_cap(Some(2), || 7).unwrap(), 7);
    }
}
