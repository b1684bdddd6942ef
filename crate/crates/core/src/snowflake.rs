//! Assouad-style `α`-snowflake: threshold embeddings at geometric scales
//! `r_i = (1+ε)^i`, damped by `r_i^{1-α}`, summed round-robin into `2v`
//! blocks and normalized by an empirical constant `M`.

use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::math;
use crate::metric::estimate_doubling_dimension;
use crate::points::PointSet;
use crate::rng::derive_seed;
use crate::stable::check_exponents;
use crate::threshold::ThresholdEmbedding;

/// Scales whose largest possible contribution falls below this fraction of
/// the total are dropped.
pub const SCALE_TRUNCATION: f64 = 1e-12;
/// Minimum number of calibration pairs.
pub const MIN_CALIBRATION_PAIRS: usize = 32;
/// More scales than this draws a warning.
pub const SCALE_WARN_CAP: usize = 4096;
/// Pairs used when calibrating on the input set.
const CALIBRATION_BUDGET: usize = 20_000;

/// Parameters of a snowflake embedding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnowflakeParams {
    pub alpha: f64,
    pub eps: f64,
    pub p: f64,
    pub q: f64,
    /// Coordinates per block.
    pub k_prime: usize,
    /// Doubling dimension to use; estimated from the data when absent.
    pub ddim: Option<f64>,
}

impl SnowflakeParams {
    pub fn new(alpha: f64, eps: f64, p: f64, q: f64, k_prime: usize) -> Self {
        SnowflakeParams { alpha, eps, p, q, k_prime, ddim: None }
    }

    fn validate(&self) -> Result<()> {
        check_exponents(self.p, self.q)?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::domain("alpha must lie in (0, 1)"));
        }
        if !(self.eps > 0.0 && self.eps < 0.25) {
            return Err(Error::domain("eps must lie in (0, 1/4)"));
        }
        if self.k_prime == 0 {
            return Err(Error::domain("k' must be at least 1"));
        }
        Ok(())
    }
}

/// `v = ⌈2 log_{1+ε}(ddim/ε) / ᾱ⌉` with `ᾱ = min(α, 1-α)`.
pub fn group_half_count(ddim: f64, eps: f64, alpha: f64) -> usize {
    let alpha_bar = alpha.min(1.0 - alpha);
    let v = math::ceil(2.0 * math::ln(ddim / eps) / math::ln_1p(eps) / alpha_bar);
    (v as usize).max(1)
}

/// The snowflake map with its frozen per-scale embeddings.
#[derive(Clone, Debug)]
pub struct SnowflakeEmbedding {
    params: SnowflakeParams,
    ddim: f64,
    v: usize,
    s: f64,
    m: usize,
    /// Inputs are multiplied by this (one over the minimum distance).
    input_scale: f64,
    /// Retained scale indices `i`, increasing.
    scales: Vec<i64>,
    maps: Vec<ThresholdEmbedding>,
    norm_const: f64,
}

impl SnowflakeEmbedding {
    /// Builds the embedding for `points` and calibrates `M` on its pairs.
    pub fn build(points: &PointSet, params: SnowflakeParams, seed: u64) -> Result<Self> {
        let mut e = Self::build_uncalibrated(points, params, seed)?;
        let n = points.len();
        let raw: Vec<Vec<f64>> = points.iter().map(|x| e.embed_raw(x)).collect::<Result<_>>()?;
        let pairs = calibration_pairs(n);
        let samples: Vec<(f64, f64)> = pairs
            .iter()
            .map(|&(i, j)| (math::lp_dist_pow(&raw[i], &raw[j], params.q), points.dist(i, j, params.p)))
            .collect();
        e.norm_const = calibrate_m(&samples, params.alpha, params.q)?;
        Ok(e)
    }

    /// Builds the embedding with `M = 1`.
    pub fn build_uncalibrated(points: &PointSet, params: SnowflakeParams, seed: u64) -> Result<Self> {
        params.validate()?;
        if points.len() < 2 {
            return Err(Error::domain("need at least two points"));
        }
        let d = points.distances(params.p);
        let dmin = d.min_distance();
        if !(dmin > 0.0) {
            return Err(Error::domain("duplicate points: minimum distance is zero"));
        }
        let ddim = match params.ddim {
            Some(v) => v,
            None => estimate_doubling_dimension(&d)?,
        }
        .max(1.0);
        let input_scale = 1.0 / dmin;
        let diam = d.diameter() * input_scale;
        Self::with_geometry(params, ddim, input_scale, diam, points.dim(), seed)
    }

    /// Builds the embedding from precomputed geometry: `input_scale`
    /// normalizes the minimum distance to 1 and `diam` is the normalized
    /// diameter.
    pub fn with_geometry(
        params: SnowflakeParams,
        ddim: f64,
        input_scale: f64,
        diam: f64,
        m: usize,
        seed: u64,
    ) -> Result<Self> {
        params.validate()?;
        let SnowflakeParams { alpha, eps, p, q, k_prime, .. } = params;
        let alpha_bar = alpha.min(1.0 - alpha);
        let v = group_half_count(ddim, eps, alpha);
        let base = math::ln_1p(eps);
        let s = math::exp(2.0 * v as f64 * alpha_bar * base);
        let lo = -2 * v as i64;
        let hi = 2 * v as i64 + math::floor(math::ln(diam.max(1.0)) / base) as i64;
        let weights: Vec<f64> = (lo..=hi).map(|i| math::exp(alpha * i as f64 * base)).collect();
        let total: f64 = weights.iter().sum();
        let scales: Vec<i64> =
            (lo..=hi).zip(&weights).filter(|(_, &w)| w > SCALE_TRUNCATION * total).map(|(i, _)| i).collect();
        if scales.len() > SCALE_WARN_CAP {
            log::warn!("snowflake uses {} scales; expect a slow build", scales.len());
        }
        let maps = scales
            .iter()
            .map(|&i| ThresholdEmbedding::new(p, q, s, k_prime, m, derive_seed(seed, &[i as u64])))
            .collect::<Result<Vec<_>>>()?;
        Ok(SnowflakeEmbedding { params, ddim, v, s, m, input_scale, scales, maps, norm_const: 1.0 })
    }

    pub fn params(&self) -> &SnowflakeParams {
        &self.params
    }
    pub fn ddim(&self) -> f64 {
        self.ddim
    }
    /// Half the number of blocks.
    pub fn v(&self) -> usize {
        self.v
    }
    pub fn groups(&self) -> usize {
        2 * self.v
    }
    /// Threshold of every per-scale embedding.
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn input_scale(&self) -> f64 {
        self.input_scale
    }
    pub fn scales(&self) -> &[i64] {
        &self.scales
    }
    pub fn output_dim(&self) -> usize {
        self.groups() * self.params.k_prime
    }
    /// The normalization constant `M`.
    pub fn m_const(&self) -> f64 {
        self.norm_const
    }
    pub fn set_m_const(&mut self, m: f64) -> Result<()> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain("M must be positive and finite"));
        }
        self.norm_const = m;
        Ok(())
    }

    /// `r_i = (1+ε)^i`.
    pub fn radius(&self, i: i64) -> f64 {
        math::exp(i as f64 * math::ln_1p(self.params.eps))
    }

    /// Block index of scale `i`.
    pub fn group_of(&self, i: i64) -> usize {
        i.rem_euclid(self.groups() as i64) as usize
    }

    /// `φ_i(x) / r_i^{1-α}` on the normalized input, written into `out`.
    fn scale_image(&self, idx: usize, x: &[f64], out: &mut [f64], accumulate: bool) -> Result<()> {
        let i = self.scales[idx];
        let r = self.radius(i);
        let root_s = math::sqrt(self.s);
        let in_scale = self.input_scale * root_s / r;
        let out_scale = r / root_s / math::powf(r, 1.0 - self.params.alpha);
        if accumulate {
            self.maps[idx].accumulate_into(x, in_scale, out_scale, out)
        } else {
            self.maps[idx].embed_into(x, in_scale, out_scale, out)
        }
    }

    /// The direct sum `⊕_j Φ_j(x)` before dividing by `M^{1/q}`.
    pub fn embed_raw(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.m, x.len())?;
        let k = self.params.k_prime;
        let mut out = alloc::vec![0.0; self.output_dim()];
        for idx in 0..self.scales.len() {
            let g = self.group_of(self.scales[idx]);
            self.scale_image(idx, x, &mut out[g * k..(g + 1) * k], true)?;
        }
        Ok(out)
    }

    pub fn embed(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = self.embed_raw(x)?;
        let f = math::powf(self.norm_const, -1.0 / self.params.q);
        for v in &mut out {
            *v *= f;
        }
        Ok(out)
    }

    /// `B_i = ‖φ_i(x) - φ_i(y)‖_q / r_i^{1-α}` for every retained scale.
    pub fn scale_contributions(&self, x: &[f64], y: &[f64]) -> Result<Vec<(i64, f64)>> {
        check_dim(self.m, x.len())?;
        check_dim(self.m, y.len())?;
        let k = self.params.k_prime;
        let mut a = alloc::vec![0.0; k];
        let mut b = alloc::vec![0.0; k];
        let mut out = Vec::with_capacity(self.scales.len());
        for idx in 0..self.scales.len() {
            self.scale_image(idx, x, &mut a, false)?;
            self.scale_image(idx, y, &mut b, false)?;
            out.push((self.scales[idx], math::lp_dist(&a, &b, self.params.q)));
        }
        Ok(out)
    }

    /// Share of `‖Φ_raw(x) - Φ_raw(y)‖_q^q` carried by the `2v` scales
    /// `i* - v … i* + v - 1` around the pair's own scale
    /// `i* = ⌊log_{1+ε} t⌋` (normalized `t`).
    pub fn window_share(&self, x: &[f64], y: &[f64], t: f64) -> Result<f64> {
        let q = self.params.q;
        let centre = math::floor(math::ln(t * self.input_scale) / math::ln_1p(self.params.eps)) as i64;
        let v = self.v as i64;
        let inside: f64 = self
            .scale_contributions(x, y)?
            .into_iter()
            .filter(|(i, _)| *i >= centre - v && *i < centre + v)
            .map(|(_, b)| math::powf(b, q))
            .sum();
        let total = math::lp_dist_pow(&self.embed_raw(x)?, &self.embed_raw(y)?, q);
        Ok(if total > 0.0 { inside / total } else { 1.0 })
    }
}

/// Index pairs used to calibrate on an `n`-point set: all of them, or an
/// evenly strided subset when there are too many.
pub fn calibration_pairs(n: usize) -> Vec<(usize, usize)> {
    let total = n * (n - 1) / 2;
    let stride = total.div_ceil(CALIBRATION_BUDGET).max(1);
    let mut out = Vec::with_capacity(total / stride + 1);
    let mut c = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if c % stride == 0 {
                out.push((i, j));
            }
            c += 1;
        }
    }
    out
}

/// `M` = median over `(‖Φ_raw(x) - Φ_raw(y)‖_q^q, t)` of the ratio
/// `‖·‖_q^q / t^{αq}`.
pub fn calibrate_m(samples: &[(f64, f64)], alpha: f64, q: f64) -> Result<f64> {
    if samples.len() < MIN_CALIBRATION_PAIRS {
        return Err(Error::Calibration(alloc::format!(
            "{} calibration pairs, need at least {MIN_CALIBRATION_PAIRS}",
            samples.len()
        )));
    }
    let (tmin, tmax) =
        samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(_, t)| (lo.min(t), hi.max(t)));
    if !(tmin > 0.0) || tmax < 10.0 * tmin {
        return Err(Error::Calibration("calibration distances span less than one decade".into()));
    }
    if tmax < 1000.0 * tmin {
        log::warn!("calibration distances span {:.2} decades; three or more recommended", math::log2(tmax / tmin) / math::log2(10.0));
    }
    let mut ratios: Vec<f64> = samples.iter().map(|&(e, t)| e / math::powf(t, alpha * q)).collect();
    Ok(median(&mut ratios))
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_count_formula() {
        assert_eq!(group_half_count(2.0, 0.2, 0.5), 51);
        assert_eq!(group_half_count(2.0, 0.2, 0.7), group_half_count(2.0, 0.2, 0.3));
    }

    #[test]
    fn constant_ratios_give_that_constant() {
        let samples: Vec<(f64, f64)> = (0..40).map(|i| {
            let t = math::powf(10.0, i as f64 / 10.0);
            (3.5 * math::powf(t, 0.5), t)
        }).collect();
        assert!((calibrate_m(&samples, 0.5, 1.0).unwrap() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn calibration_rejects_narrow_or_small_sets() {
        let narrow: Vec<(f64, f64)> = (0..40).map(|i| (1.0, 1.0 + i as f64 * 0.1)).collect();
        assert!(matches!(calibrate_m(&narrow, 0.5, 1.0), Err(Error::Calibration(_))));
        let few: Vec<(f64, f64)> = (0..10).map(|i| (1.0, math::powf(10.0, i as f64))).collect();
        assert!(calibrate_m(&few, 0.5, 1.0).is_err());
    }

    #[test]
    fn groups_use_euclidean_residues() {
        let pts = PointSet::new(1, alloc::vec![0.0, 1.0, 3.0, 7.0]).unwrap();
        let e = SnowflakeEmbedding::build_uncalibrated(&pts, SnowflakeParams::new(0.5, 0.2, 1.0, 1.0, 2), 1).unwrap();
        assert_eq!(e.group_of(-1), e.groups() - 1);
        assert_eq!(e.group_of(e.groups() as i64), 0);
        assert_eq!(e.output_dim(), e.groups() * 2);
        assert_eq!(e.scales()[0], -2 * e.v() as i64);
    }

    #[test]
    fn domain() {
        let pts = PointSet::new(1, alloc::vec![0.0, 1.0]).unwrap();
        for (a, eps) in [(0.0, 0.1), (1.0, 0.1), (0.5, 0.25)] {
            assert!(SnowflakeEmbedding::build_uncalibrated(&pts, SnowflakeParams::new(a, eps, 1.0, 1.0, 2), 0).is_err());
        }
        let dup = PointSet::new(1, alloc::vec![0.0, 0.0]).unwrap();
        assert!(SnowflakeEmbedding::build_uncalibrated(&dup, SnowflakeParams::new(0.5, 0.1, 1.0, 1.0, 2), 0).is_err());
    }
}
