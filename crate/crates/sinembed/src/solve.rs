//! Multi-threaded drivers for the exhaustive k-center search.

use rayon::prelude::*;

use sinembed_core::kcenter::{binomial, brute_force_from, KCenterSolution, BRUTE_FORCE_LIMIT};
use sinembed_core::{DistanceMatrix, Error};

use crate::error::Result;

/// Exact k-center over all points, splitting the search by the first center.
/// Returns the same solution as the sequential search.
pub fn parallel_brute_force(d: &DistanceMatrix, k: usize) -> Result<KCenterSolution> {
    let n = d.len();
    if k == 0 || k > n {
        return Err(Error::Domain(format!("k = {k} outside 1..={n}")).into());
    }
    let count = binomial(n, k);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::Guard(format!("C({n}, {k}) = {count:e} center sets exceeds the limit {BRUTE_FORCE_LIMIT:e}")).into());
    }
    let all: Vec<usize> = (0..n).collect();
    let branches: Vec<(f64, Vec<usize>)> =
        (0..=n - k).into_par_iter().map(|first| brute_force_from(d, &all, &all, k, first)).collect();
    let mut best = (f64::INFINITY, Vec::new());
    let mut history = Vec::new();
    for b in branches {
        if b.0 < best.0 {
            best = b;
            history.push(best.0);
        }
    }
    Ok(KCenterSolution { centers: best.1, radius: best.0, history })
}
