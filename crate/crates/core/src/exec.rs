//! Data-parallel helpers with a sequential fallback.
//!
//! Results are always collected in index order, so both strategies produce
//! identical output. Without the `parallel` feature, `Exec::Parallel` runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn filter_map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().filter_map(f).collect(),
            _ => (0..n).filter_map(f).collect(),
        }
    }

    /// Index of the first element (by index) satisfying `pred`, if any.
    pub fn find_first<F>(self, n: u64, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_first(|&i| pred(i)),
            _ => (0..n).find(|&i| pred(i)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let f = |i: u64| (i % 7 == 3).then_some(i * i);
        let seq = Exec::Sequential.filter_map_range(10_000, f);
        let par = Exec::Parallel.filter_map_range(10_000, f);
        assert_eq!(seq, par);
        assert_eq!(
            Exec::Sequential.map_range(100, |i| i + 1),
            Exec::Parallel.map_range(100, |i| i + 1)
        );
        assert_eq!(
            Exec::Parallel.find_first(1000, |i| i > 500 && i % 2 == 1),
            Some(501)
        );
        assert_eq!(Exec::Sequential.find_first(10, |_| false), None);
    }
}
