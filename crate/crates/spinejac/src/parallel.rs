//! Enumeration fanned out over non-invertibility sets.
//!
//! Each worker handles whole node sets `S`; results are concatenated and
//! sorted, so the output does not depend on the number of workers.

use rayon::prelude::*;
use spinejac_core::{
    enumerate_with_noninv, noninv_sets_on, DualGraph, Query, SheafClass, Subcurve, Thresholds,
};

pub const THREADS_VAR: &str = "SPINEJAC_THREADS";

/// Worker cap from `SPINEJAC_THREADS`; `None` when unset or not a positive
/// integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_VAR).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a pool of `threads` workers, or rayon's default when `None`.
pub fn with_workers<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// [`spinejac_core::enumerate_on`] with one task per node set.
pub fn enumerate_on(g: &DualGraph, support: Subcurve, t: &Thresholds, query: Query) -> Vec<SheafClass> {
    let mut out: Vec<SheafClass> = noninv_sets_on(g, support, query.simple_only)
        .into_par_iter()
        .flat_map_iter(|s| enumerate_with_noninv(g, support, t, query.mode, query.scan, s))
        .collect();
    out.sort();
    out
}
