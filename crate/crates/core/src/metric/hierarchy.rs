use alloc::vec::Vec;

use super::net::greedy_net;
use crate::points::DistanceMatrix;

/// Nested nets `S_0 ⊇ S_1 ⊇ … ⊇ S_t`, where distances are first divided by
/// the minimum interpoint distance and `S_i` is a `2^i`-net of `S_{i-1}`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    /// Factor the distances were multiplied by (`1 / min distance`).
    pub normalization: f64,
    /// `levels[i]` holds the original indices of `S_i`.
    pub levels: Vec<Vec<usize>>,
    /// `parents[i][x]` is the level-`i+1` parent of point `x` of level `i`
    /// (indexed by original index; `usize::MAX` when `x ∉ S_i`).
    pub parents: Vec<Vec<usize>>,
}

impl Hierarchy {
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn root(&self) -> usize {
        self.levels.last().map_or(usize::MAX, |l| l[0])
    }

    /// Ancestor of `x` at `level` (following parent links from level 0).
    pub fn ancestor(&self, x: usize, level: usize) -> usize {
        let mut cur = x;
        for parents in &self.parents[..level] {
            cur = parents[cur];
        }
        cur
    }

    /// Total number of level memberships, `Σ |S_i|`.
    pub fn size(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

pub fn build_hierarchy(d: &DistanceMatrix) -> Hierarchy {
    let n = d.len();
    let min = d.min_distance();
    let normalization = if min.is_finite() && min > 0.0 { 1.0 / min } else { 1.0 };
    let nd = d.scaled(normalization);
    let mut levels = alloc::vec![(0..n).collect::<Vec<usize>>()];
    let mut parents = Vec::new();
    let mut gamma = 1.0;
    while levels.last().map_or(0, Vec::len) > 1 {
        gamma *= 2.0;
        let prev = levels.last().unwrap();
        let next = greedy_net(&nd, prev, gamma);
        let mut link = alloc::vec![usize::MAX; n];
        for &x in prev {
            link[x] = nd.nearest_in(x, &next).0;
        }
        parents.push(link);
        levels.push(next);
    }
    Hierarchy { normalization, levels, parents }
}
