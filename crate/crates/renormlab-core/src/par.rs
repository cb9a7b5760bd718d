//! Data-parallel inner loops.
//!
//! Everything expensive in this crate is a map over independent items
//! (jacobian columns, window statistics, nest batches, distortion triples).
//! With the `parallel` feature the maps fan out over rayon; without it they
//! run sequentially with identical results. Outputs are collected in input
//! order, so artifacts are byte-identical either way.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Map `f` over `0..n`, in parallel when enabled.
pub fn par_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    par_map((0..n).collect::<Vec<_>>(), f)
}

/// Sequential reference version, kept callable under either feature so the
/// bench suite can compare both paths in one build.
pub fn seq_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}
