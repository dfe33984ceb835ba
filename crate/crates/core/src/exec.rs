//! Data-parallel helpers. With the `parallel` feature and `jobs > 1` work
//! runs on a dedicated rayon pool of `jobs` threads; otherwise it runs
//! sequentially on the caller's thread. Results are always collected in
//! input order, so both paths produce identical output.

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(jobs: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        return with_pool(jobs, || items.par_iter().map(&f).collect());
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

/// Maps `f` over `items` and folds the results with an associative `merge`.
pub fn map_reduce<T, U, F, M>(jobs: usize, items: &[T], identity: U, f: F, merge: M) -> U
where
    T: Sync,
    U: Send + Clone + Sync,
    F: Fn(&T) -> U + Sync + Send,
    M: Fn(U, U) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        return with_pool(jobs, || {
            items
                .par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &merge)
        });
    }
    let _ = jobs;
    items.iter().map(f).fold(identity, merge)
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(op),
        // fall back to the global pool
        Err(_) => op(),
    }
}

/// Whether this build can run work in parallel.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
