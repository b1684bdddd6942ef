use alloc::vec::Vec;

use super::ddim::estimate_doubling_dimension;
use crate::error::{Error, Result};
use crate::math;
use crate::points::DistanceMatrix;
use crate::rng::{derive_seed, Stream};

/// Tuning of [`padded_decomposition_with`].
#[derive(Clone, Copy, Debug)]
pub struct PaddingConfig {
    /// Initial padding constant.
    pub c0: f64,
    /// Doubling-dimension value to use; estimated from the data when absent.
    pub ddim: Option<f64>,
    /// How many times `c0` may be doubled before giving up.
    pub max_escalations: usize,
}

impl Default for PaddingConfig {
    fn default() -> Self {
        PaddingConfig { c0: 2.0, ddim: None, max_escalations: 60 }
    }
}

/// A multiset of partitions `[P_1 … P_m]` with clusters of diameter at most
/// `δ`, in which every point's ball of radius `δ / (c0·ddim)` stays inside
/// its cluster in at least a `1 - ε` fraction of the partitions.
#[derive(Clone, Debug)]
pub struct PaddedPartitionFamily {
    pub delta: f64,
    pub eps: f64,
    /// The padding constant after escalation.
    pub c0: f64,
    /// Every `c0` tried, in order; the last one succeeded.
    pub c0_history: Vec<f64>,
    /// Doubling dimension used, at least 1.
    pub ddim: f64,
    /// Carving radius of each partition.
    pub radii: Vec<f64>,
    /// `assignment[j][x]` is the cluster of `x` in partition `j`, named by
    /// the index of the cluster's carving center.
    pub assignment: Vec<Vec<usize>>,
}

impl PaddedPartitionFamily {
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn padding_radius(&self) -> f64 {
        self.delta / (self.c0 * self.ddim)
    }

    /// Clusters of partition `j` as `(cluster id, members)` sorted by id.
    pub fn clusters(&self, j: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for (x, &c) in self.assignment[j].iter().enumerate() {
            match out.binary_search_by_key(&c, |e| e.0) {
                Ok(pos) => out[pos].1.push(x),
                Err(pos) => out.insert(pos, (c, alloc::vec![x])),
            }
        }
        out
    }

    /// Largest intra-cluster distance over all partitions.
    pub fn max_cluster_diameter(&self, d: &DistanceMatrix) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.assignment {
            for x in 0..a.len() {
                for y in x + 1..a.len() {
                    if a[x] == a[y] {
                        worst = worst.max(d.get(x, y));
                    }
                }
            }
        }
        worst
    }

    /// Per point, the fraction of partitions in which the ball of radius
    /// `radius` around it lies inside its own cluster.
    pub fn padding_fractions(&self, d: &DistanceMatrix, radius: f64) -> Vec<f64> {
        padding_fractions(d, &self.assignment, radius)
    }
}

fn padding_fractions(d: &DistanceMatrix, assignment: &[Vec<usize>], radius: f64) -> Vec<f64> {
    let n = d.len();
    let m = assignment.len() as f64;
    (0..n)
        .map(|x| {
            let ball: Vec<usize> = (0..n).filter(|&y| d.get(x, y) <= radius).collect();
            let padded = assignment.iter().filter(|a| ball.iter().all(|&y| a[y] == a[x])).count();
            padded as f64 / m
        })
        .collect()
}

/// One ball-carving partition: centers in random order, one radius drawn
/// from `[δ/4, δ/2]`, each point joins the first center that reaches it.
/// When `δ` is at least the diameter the whole set forms one cluster named
/// by the first center.
fn carve(d: &DistanceMatrix, delta: f64, seed: u64) -> (f64, Vec<usize>) {
    let n = d.len();
    let mut stream = Stream::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    stream.shuffle(&mut order);
    let radius = stream.uniform_in(0.25 * delta, 0.5 * delta);
    if d.diameter() <= delta {
        return (radius, alloc::vec![order[0]; n]);
    }
    let mut assignment = alloc::vec![usize::MAX; n];
    let mut left = n;
    for &c in &order {
        if left == 0 {
            break;
        }
        for (x, slot) in assignment.iter_mut().enumerate() {
            if *slot == usize::MAX && d.get(c, x) <= radius {
                *slot = c;
                left -= 1;
            }
        }
    }
    (radius, assignment)
}

pub fn padded_decomposition(d: &DistanceMatrix, delta: f64, eps: f64, seed: u64) -> Result<PaddedPartitionFamily> {
    padded_decomposition_with(d, delta, eps, seed, PaddingConfig::default())
}

pub fn padded_decomposition_with(
    d: &DistanceMatrix,
    delta: f64,
    eps: f64,
    seed: u64,
    config: PaddingConfig,
) -> Result<PaddedPartitionFamily> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::domain("delta must be positive and finite"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps must lie in (0, 1)"));
    }
    if d.is_empty() {
        return Err(Error::domain("empty point set"));
    }
    let ddim = match config.ddim {
        Some(v) => v,
        None if d.len() >= 2 => estimate_doubling_dimension(d)?,
        None => 1.0,
    }
    .max(1.0);
    let log_term = math::log2(ddim).max(1.0);
    let mut c0 = config.c0;
    let mut history = Vec::new();
    let mut radii = Vec::new();
    let mut assignment: Vec<Vec<usize>> = Vec::new();
    for _ in 0..=config.max_escalations {
        history.push(c0);
        let m = math::ceil(c0 * ddim * log_term / eps) as usize;
        // Partition j depends only on (seed, j), so escalation extends the
        // family rather than redrawing it.
        while assignment.len() < m {
            let (r, a) = carve(d, delta, derive_seed(seed, &[assignment.len() as u64]));
            radii.push(r);
            assignment.push(a);
        }
        let radius = delta / (c0 * ddim);
        let worst = padding_fractions(d, &assignment[..m], radius).into_iter().fold(1.0, f64::min);
        if worst >= 1.0 - eps {
            assignment.truncate(m);
            radii.truncate(m);
            return Ok(PaddedPartitionFamily { delta, eps, c0, c0_history: history, ddim, radii, assignment });
        }
        c0 *= 2.0;
    }
    Err(Error::Calibration(alloc::format!(
        "padding below {} after {} escalations of c0",
        1.0 - eps,
        config.max_escalations
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::PointSet;

    #[test]
    fn whole_set_in_one_cluster_when_delta_covers_the_diameter() {
        let d = PointSet::new(1, (0..20).map(|i| i as f64).collect()).unwrap().distances(1.0);
        let fam = padded_decomposition(&d, 19.0, 0.2, 3).unwrap();
        for j in 0..fam.len() {
            assert_eq!(fam.clusters(j).len(), 1);
        }
        assert!(fam.padding_fractions(&d, fam.padding_radius()).iter().all(|&f| f == 1.0));
    }

    #[test]
    fn diameter_and_padding_hold() {
        let d = PointSet::new(1, (0..60).map(|i| (i as f64) * 1.5).collect()).unwrap().distances(1.0);
        let delta = 20.0;
        let fam = padded_decomposition(&d, delta, 0.2, 11).unwrap();
        assert!(fam.max_cluster_diameter(&d) <= delta);
        let bound = math::ceil(fam.c0 * fam.ddim * math::log2(fam.ddim).max(1.0) / 0.2) as usize;
        assert!(fam.len() <= bound);
        assert!(fam.padding_fractions(&d, fam.padding_radius()).iter().all(|&f| f >= 0.8));
    }
}
