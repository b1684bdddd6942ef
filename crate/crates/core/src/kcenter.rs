//! Discrete k-center: farthest-point traversal, exhaustive search, and the
//! net + snowflake reduction that runs the exhaustive search on a small
//! embedded net.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::build_net;
use crate::points::{DistanceMatrix, PointSet};
use crate::snowflake::{SnowflakeEmbedding, SnowflakeParams};

/// Largest number of center sets the exhaustive search will enumerate.
pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Centers (indices into the input) and the covering radius they achieve.
#[derive(Clone, Debug, PartialEq)]
pub struct KCenterSolution {
    pub centers: Vec<usize>,
    pub radius: f64,
    /// Radius after each improvement step (method specific).
    pub history: Vec<f64>,
}

/// `max_x min_c d(x, c)` over `clients`.
pub fn covering_radius(d: &DistanceMatrix, centers: &[usize], clients: impl IntoIterator<Item = usize>) -> f64 {
    clients.into_iter().map(|x| d.nearest_in(x, centers).1).fold(0.0, f64::max)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::domain(alloc::format!("k = {k} outside 1..={n}")));
    }
    Ok(())
}

/// Farthest-point traversal from point 0; a 2-approximation.
pub fn gonzalez(d: &DistanceMatrix, k: usize) -> Result<KCenterSolution> {
    let n = d.len();
    check_k(n, k)?;
    let mut centers = alloc::vec![0usize];
    let mut near: Vec<f64> = d.row(0).to_vec();
    let mut history = alloc::vec![near.iter().copied().fold(0.0, f64::max)];
    while centers.len() < k {
        let (far, _) = near.iter().enumerate().fold((0, -1.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        centers.push(far);
        for (x, v) in near.iter_mut().enumerate() {
            *v = v.min(d.get(far, x));
        }
        history.push(near.iter().copied().fold(0.0, f64::max));
    }
    let radius = *history.last().unwrap();
    Ok(KCenterSolution { centers, radius, history })
}

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Best center set among `candidates` for `clients` whose first (smallest
/// position in `candidates`) member is `candidates[first]`. Returns
/// `(radius, positions)`; ties keep the lexicographically smallest set.
pub fn brute_force_from(
    d: &DistanceMatrix,
    candidates: &[usize],
    clients: &[usize],
    k: usize,
    first: usize,
) -> (f64, Vec<usize>) {
    let c = candidates.len();
    let mut best = (f64::INFINITY, Vec::new());
    if first + k > c {
        return best;
    }
    // Distance of each client to the current partial center set, per depth.
    let mut near = alloc::vec![alloc::vec![f64::INFINITY; clients.len()]; k + 1];
    for (a, &x) in clients.iter().enumerate() {
        near[1][a] = d.get(x, candidates[first]);
    }
    let mut chosen = alloc::vec![first];
    if k == 1 {
        let r = near[1].iter().copied().fold(0.0, f64::max);
        return (r, chosen);
    }
    chosen.push(first);
    // Depth-first enumeration; `chosen[depth]` is the position tried at depth.
    let mut depth = 1;
    loop {
        chosen[depth] += 1;
        if chosen[depth] + (k - 1 - depth) >= c {
            if depth == 1 {
                break;
            }
            chosen.pop();
            depth -= 1;
            continue;
        }
        let cand = candidates[chosen[depth]];
        if depth + 1 == k {
            // Last center: stop scanning clients once this set cannot win.
            let mut worst = 0.0f64;
            for (a, &x) in clients.iter().enumerate() {
                worst = worst.max(near[depth][a].min(d.get(x, cand)));
                if worst >= best.0 {
                    break;
                }
            }
            if worst < best.0 {
                best = (worst, chosen.clone());
            }
        } else {
            let (prev, cur) = near.split_at_mut(depth + 1);
            for (a, &x) in clients.iter().enumerate() {
                cur[0][a] = prev[depth][a].min(d.get(x, cand));
            }
            let next = chosen[depth];
            chosen.push(next);
            depth += 1;
        }
    }
    best
}

/// Exact discrete k-center by enumerating every center set.
pub fn brute_force_kcenter(d: &DistanceMatrix, k: usize) -> Result<KCenterSolution> {
    let n = d.len();
    check_k(n, k)?;
    let all: Vec<usize> = (0..n).collect();
    brute_force_over(d, &all, &all, k)
}

/// Exhaustive search with centers from `candidates` serving `clients`.
pub fn brute_force_over(d: &DistanceMatrix, candidates: &[usize], clients: &[usize], k: usize) -> Result<KCenterSolution> {
    check_k(candidates.len(), k)?;
    let count = binomial(candidates.len(), k);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::Guard(alloc::format!(
            "C({}, {k}) = {count:e} center sets exceeds the limit {BRUTE_FORCE_LIMIT:e}",
            candidates.len()
        )));
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut history = Vec::new();
    for first in 0..=candidates.len() - k {
        let cand = brute_force_from(d, candidates, clients, k, first);
        if cand.0 < best.0 {
            best = cand;
            history.push(best.0);
        }
    }
    let centers = best.1.iter().map(|&i| candidates[i]).collect();
    Ok(KCenterSolution { centers, radius: best.0, history })
}

/// Outcome of [`kcenter_pipeline`] with its intermediate quantities.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub solution: KCenterSolution,
    /// Farthest-point radius, within a factor 2 of optimal.
    pub r_tilde: f64,
    /// Net scale `(ε/2) r̃`.
    pub gamma: f64,
    /// Net point indices.
    pub net: Vec<usize>,
    /// Radius of the chosen centers over the net in the embedded metric.
    pub embedded_radius: f64,
}

/// Tuning of [`kcenter_pipeline`].
#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    /// Ambient norm of the input.
    pub p: f64,
    /// Snowflake exponent.
    pub alpha: f64,
    /// Coordinates per snowflake block.
    pub k_prime: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { p: 1.0, alpha: 0.5, k_prime: 32 }
    }
}

/// k-center through a net and a snowflake: estimate `r̃` by farthest-point
/// traversal, take an `(ε/2) r̃`-net, snowflake it, solve exactly on the
/// embedded net and report the radius of those centers on the full set.
pub fn kcenter_pipeline(points: &PointSet, k: usize, eps: f64, seed: u64, config: PipelineConfig) -> Result<PipelineOutcome> {
    let n = points.len();
    check_k(n, k)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps must lie in (0, 1)"));
    }
    let d = points.distances(config.p);
    let coarse = gonzalez(&d, k)?;
    let r_tilde = coarse.radius;
    let all: Vec<usize> = (0..n).collect();
    if r_tilde == 0.0 {
        return Ok(PipelineOutcome { solution: coarse, r_tilde, gamma: 0.0, net: all, embedded_radius: 0.0 });
    }
    let gamma = 0.5 * eps * r_tilde;
    let net = build_net(&d, gamma)?.members;
    if net.len() <= k {
        let radius = covering_radius(&d, &net, 0..n);
        let solution = KCenterSolution { centers: net.clone(), radius, history: alloc::vec![radius] };
        return Ok(PipelineOutcome { solution, r_tilde, gamma, net, embedded_radius: 0.0 });
    }
    let count = binomial(net.len(), k);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::Guard(alloc::format!(
            "net of {} points gives {count:e} center sets; raise eps or lower k",
            net.len()
        )));
    }
    let sub = points.subset(&net);
    // The snowflake needs ε < 1/4.
    let params = SnowflakeParams::new(config.alpha, eps.min(0.2), config.p, config.p, config.k_prime);
    let flake = SnowflakeEmbedding::build_uncalibrated(&sub, params, seed)?;
    let images: Vec<Vec<f64>> = sub.iter().map(|x| flake.embed_raw(x)).collect::<Result<_>>()?;
    let embedded = DistanceMatrix::from_fn(net.len(), |i, j| math::lp_dist(&images[i], &images[j], config.p));
    let local: Vec<usize> = (0..net.len()).collect();
    let inner = brute_force_over(&embedded, &local, &local, k)?;
    let centers: Vec<usize> = inner.centers.iter().map(|&i| net[i]).collect();
    let radius = covering_radius(&d, &centers, 0..n);
    let history = alloc::vec![r_tilde, radius];
    Ok(PipelineOutcome {
        solution: KCenterSolution { centers, radius, history },
        r_tilde,
        gamma,
        net,
        embedded_radius: inner.radius,
    })
}
