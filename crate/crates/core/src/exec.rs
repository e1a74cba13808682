//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool. Without it, both strategies run sequentially, so callers
//! never need their own `cfg` switches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How independent work items are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Maps every item and collects results in input order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps every item to a vector and concatenates the results in input order.
    pub fn flat_map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Vec<U> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().flat_map_iter(f).collect(),
            _ => items.iter().flat_map(f).collect(),
        }
    }

    /// Fallible variant of [`Exec::flat_map`]; an error from any item is returned.
    pub fn try_flat_map<T, U, E, F>(self, items: &[T], f: F) -> Result<Vec<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
        F: Fn(&T) -> Result<Vec<U>, E> + Sync + Send,
    {
        let chunks: Result<Vec<Vec<U>>, E> = match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        };
        Ok(chunks?.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let items: Vec<i64> = (0..1000).collect();
        let seq = Exec::Sequential.flat_map(&items, |&x| vec![x, -x]);
        let par = Exec::Parallel.flat_map(&items, |&x| vec![x, -x]);
        assert_eq!(seq, par);
        assert_eq!(Exec::Parallel.map(&items, |x| x * 2)[999], 1998);
    }

    #[test]
    fn try_flat_map_surfaces_errors() {
        let items = [1, 2, 3];
        let out: Result<Vec<i32>, &str> =
            Exec::Parallel.try_flat_map(&items, |&x| if x == 2 { Err("two") } else { Ok(vec![x]) });
        assert_eq!(out, Err("two"));
    }
}
