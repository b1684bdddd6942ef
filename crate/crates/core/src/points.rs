//! Point sets in `R^m` and their pairwise distances.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// An ordered set of `m`-dimensional points stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    data: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("point dimension must be at least 1"));
        }
        if data.len() % dim != 0 {
            return Err(Error::domain("coordinate count is not a multiple of the dimension"));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("non-finite coordinate"));
        }
        Ok(PointSet { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(dim * rows.len());
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        PointSet::new(dim, data)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// `ℓ_p` distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize, p: f64) -> f64 {
        math::lp_dist(self.point(i), self.point(j), p)
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            data.extend_from_slice(self.point(i));
        }
        PointSet { dim: self.dim, data }
    }

    /// Every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> PointSet {
        PointSet { dim: self.dim, data: self.data.iter().map(|x| x * factor).collect() }
    }

    pub fn distances(&self, p: f64) -> DistanceMatrix {
        DistanceMatrix::from_fn(self.len(), |i, j| self.dist(i, j, p))
    }
}

/// Dense symmetric matrix of pairwise distances; the metric that all the
/// net and partition routines work on.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds the matrix from a symmetric distance function.
    pub fn from_fn(n: usize, mut d: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = d(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        DistanceMatrix { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn diameter(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points; infinite for fewer than
    /// two points.
    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.min(self.get(i, j));
            }
        }
        best
    }

    /// Restriction to `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> DistanceMatrix {
        let n = indices.len();
        let mut values = alloc::vec![0.0; n * n];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                values[a * n + b] = self.get(i, j);
            }
        }
        DistanceMatrix { n, values }
    }

    pub fn scaled(&self, factor: f64) -> DistanceMatrix {
        DistanceMatrix { n: self.n, values: self.values.iter().map(|x| x * factor).collect() }
    }

    /// Distance from `i` to the closest member of `set`, with its index.
    pub fn nearest_in(&self, i: usize, set: &[usize]) -> (usize, f64) {
        let mut best = (usize::MAX, f64::INFINITY);
        for &c in set {
            let d = self.get(i, c);
            if d < best.1 {
                best = (c, d);
            }
        }
        best
    }
}
