use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::points::DistanceMatrix;

/// A `γ`-net of a point set: members are pairwise at least `γ` apart and
/// every point lies within `< γ` of some member.
#[derive(Clone, Debug, PartialEq)]
pub struct Net {
    pub gamma: f64,
    /// Indices of the net points, increasing.
    pub members: Vec<usize>,
    /// For every point of the parent set, the index of its nearest member.
    pub cover: Vec<usize>,
}

impl Net {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest distance from a point to its assigned member.
    pub fn covering_radius(&self, d: &DistanceMatrix) -> f64 {
        self.cover.iter().enumerate().map(|(i, &c)| d.get(i, c)).fold(0.0, f64::max)
    }

    /// Smallest distance between two members.
    pub fn separation(&self, d: &DistanceMatrix) -> f64 {
        let mut best = f64::INFINITY;
        for (a, &i) in self.members.iter().enumerate() {
            for &j in &self.members[a + 1..] {
                best = best.min(d.get(i, j));
            }
        }
        best
    }
}

/// Greedy `γ`-net of `candidates` (scanned in the given order).
pub fn greedy_net(d: &DistanceMatrix, candidates: &[usize], gamma: f64) -> Vec<usize> {
    let mut members: Vec<usize> = Vec::new();
    for &i in candidates {
        if members.iter().all(|&c| d.get(i, c) >= gamma) {
            members.push(i);
        }
    }
    members
}

/// Greedy `γ`-net of the whole set, scanning points in index order.
pub fn build_net(d: &DistanceMatrix, gamma: f64) -> Result<Net> {
    if !(gamma > 0.0) {
        return Err(Error::domain("net scale must be positive"));
    }
    let all: Vec<usize> = (0..d.len()).collect();
    let members = greedy_net(d, &all, gamma);
    let cover = (0..d.len()).map(|i| d.nearest_in(i, &members).0).collect();
    Ok(Net { gamma, members, cover })
}
