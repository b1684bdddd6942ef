use alloc::vec::Vec;

use super::ddim::estimate_doubling_dimension;
use super::net::greedy_net;
use super::padded::{padded_decomposition_with, PaddedPartitionFamily, PaddingConfig};
use crate::error::{Error, Result};
use crate::math;
use crate::points::PointSet;
use crate::rng::derive_seed;
use crate::stable::check_exponents;
use crate::threshold::ThresholdEmbedding;

/// Tuning of [`intrinsic_embedding`].
#[derive(Clone, Copy, Debug)]
pub struct IntrinsicConfig {
    /// Output coordinates per partition.
    pub k_part: usize,
    /// Initial padding constant.
    pub c0: f64,
    /// Doubling-dimension value to use; estimated when absent.
    pub ddim: Option<f64>,
}

impl Default for IntrinsicConfig {
    fn default() -> Self {
        IntrinsicConfig { k_part: 32, c0: 2.0, ddim: None }
    }
}

/// Images of a finite set under the partition-wise threshold embedding.
#[derive(Clone, Debug)]
pub struct IntrinsicEmbedding {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub eps: f64,
    /// Doubling dimension used, at least 1.
    pub ddim: f64,
    /// Net scale `ε / ddim`.
    pub net_scale: f64,
    pub k_part: usize,
    pub family: PaddedPartitionFamily,
    /// Greedy `ε/ddim`-net of the whole set; these points always embed as
    /// themselves.
    pub net: Vec<usize>,
    /// `representative[j][x]`: the net point whose image `x` takes in
    /// partition `j`.
    pub representative: Vec<Vec<usize>>,
    /// One row per input point, `m · k_part` columns.
    pub images: PointSet,
}

impl IntrinsicEmbedding {
    pub fn partitions(&self) -> usize {
        self.family.len()
    }

    pub fn dim(&self) -> usize {
        self.images.dim()
    }

    /// Deterministic bound `s^q / P_q` on `‖f(x) - f(y)‖_q^q`.
    pub fn pair_cap(&self) -> f64 {
        math::powf(self.s, self.q) / crate::stable::cosine_moment_unchecked(self.q)
    }
}

/// Embeds `points` (under `ℓ_p`) with threshold `s` into `ℓ_q` through a
/// padded decomposition whose padding radius reaches `s`.
///
/// Per partition and cluster, an `ε/ddim`-net is embedded at scale
/// `ddim/ε` with threshold `s·ddim/ε` and scaled back; other points copy
/// the image of their nearest net point in the cluster. Partition blocks are
/// concatenated and scaled by `m^{-1/q}`.
pub fn intrinsic_embedding(
    points: &PointSet,
    s: f64,
    p: f64,
    q: f64,
    eps: f64,
    seed: u64,
    config: IntrinsicConfig,
) -> Result<IntrinsicEmbedding> {
    check_exponents(p, q)?;
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain("threshold must be finite and > 1"));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::domain("eps must lie in (0, 1/2)"));
    }
    if config.k_part == 0 {
        return Err(Error::domain("k_part must be at least 1"));
    }
    let n = points.len();
    if n < 2 {
        return Err(Error::domain("need at least two points"));
    }
    let d = points.distances(p);
    let ddim = match config.ddim {
        Some(v) => v,
        None => estimate_doubling_dimension(&d)?,
    }
    .max(1.0);
    let diam = d.diameter();

    let padding = PaddingConfig { c0: config.c0, ddim: Some(ddim), ..PaddingConfig::default() };
    let mut delta = config.c0 * ddim * s;
    let family = loop {
        let fam = padded_decomposition_with(&d, delta, eps / s, derive_seed(seed, &[0]), padding)?;
        if fam.padding_radius() >= s || delta >= 4.0 * diam {
            break fam;
        }
        delta *= 2.0;
    };

    let gamma = eps / ddim;
    let all: Vec<usize> = (0..n).collect();
    let net = greedy_net(&d, &all, gamma);
    let mut is_net = alloc::vec![false; n];
    for &x in &net {
        is_net[x] = true;
    }

    let m = family.len();
    let width = m * config.k_part;
    let mut data = alloc::vec![0.0; n * width];
    let in_scale = ddim / eps;
    let out_scale = (eps / ddim) * math::powf(m as f64, -1.0 / q);
    let s_inner = s * ddim / eps;
    let mut representative = Vec::with_capacity(m);
    let mut block = alloc::vec![0.0; config.k_part];
    for j in 0..m {
        let mut rep = alloc::vec![usize::MAX; n];
        for (cid, members) in family.clusters(j) {
            // Net of the cluster: global net members first, then greedy
            // additions for points their own cover left in another cluster.
            let mut cluster_net: Vec<usize> = members.iter().copied().filter(|&x| is_net[x]).collect();
            for &x in &members {
                if !is_net[x] && cluster_net.iter().all(|&c| d.get(x, c) >= gamma) {
                    cluster_net.push(x);
                }
            }
            let emb = ThresholdEmbedding::new(
                p,
                q,
                s_inner,
                config.k_part,
                points.dim(),
                derive_seed(seed, &[1, j as u64, cid as u64]),
            )?;
            for &c in &cluster_net {
                emb.embed_into(points.point(c), in_scale, out_scale, &mut block)?;
                let off = c * width + j * config.k_part;
                data[off..off + config.k_part].copy_from_slice(&block);
                rep[c] = c;
            }
            for &x in &members {
                if rep[x] == usize::MAX {
                    let (c, _) = d.nearest_in(x, &cluster_net);
                    rep[x] = c;
                    let src = c * width + j * config.k_part;
                    let dst = x * width + j * config.k_part;
                    data.copy_within(src..src + config.k_part, dst);
                }
            }
        }
        representative.push(rep);
    }
    let images = PointSet::new(width, data)?;
    Ok(IntrinsicEmbedding {
        p,
        q,
        s,
        eps,
        ddim,
        net_scale: gamma,
        k_part: config.k_part,
        family,
        net,
        representative,
        images,
    })
}
