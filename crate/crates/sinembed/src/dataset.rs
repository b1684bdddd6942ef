//! Synthetic point sets for experiments.

use std::fmt;
use std::str::FromStr;

use sinembed_core::math;
use sinembed_core::rng::{derive_seed, Stream};
use sinembed_core::stable::draw_stable;
use sinembed_core::{Error, PointSet};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetKind {
    /// I.i.d. centered Gaussian coordinates.
    Gaussian,
    /// The first `n` points of the integer lattice, last coordinate fastest.
    Grid,
    /// Clusters around random centers with pairwise distances mostly inside
    /// a target range.
    Clustered,
    /// Points along a one-dimensional curve whose intrinsic length equals
    /// the ambient distance.
    LowDoublingCurve,
}

impl FromStr for DatasetKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(DatasetKind::Gaussian),
            "grid" => Ok(DatasetKind::Grid),
            "clustered" => Ok(DatasetKind::Clustered),
            "low-doubling-curve" | "curve" => Ok(DatasetKind::LowDoublingCurve),
            other => Err(HarnessError::usage(format!(
                "unknown dataset kind `{other}` (expected gaussian, grid, clustered or low-doubling-curve)"
            ))),
        }
    }
}

impl fmt::Display for DatasetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetKind::Gaussian => "gaussian",
            DatasetKind::Grid => "grid",
            DatasetKind::Clustered => "clustered",
            DatasetKind::LowDoublingCurve => "low-doubling-curve",
        })
    }
}

/// Everything that determines a generated point set.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Norm in which distance targets are expressed.
    pub p: f64,
    /// Gaussian standard deviation or lattice spacing.
    pub scale: f64,
    /// Target distance range of the clustered kind.
    pub range: (f64, f64),
    /// Cluster count of the clustered kind.
    pub clusters: usize,
    /// Fraction of clustered points placed below the range, next to another point.
    pub satellites: f64,
    /// Bounds of the log-uniform gaps between consecutive curve points.
    pub gaps: (f64, f64),
}

impl DatasetSpec {
    pub fn new(kind: DatasetKind, n: usize, m: usize, seed: u64) -> Self {
        DatasetSpec {
            kind,
            n,
            m,
            seed,
            p: 1.0,
            scale: 1.0,
            range: (1.0, 4.0),
            clusters: 5,
            satellites: 0.05,
            gaps: (1.0, 50.0),
        }
    }
}

/// Generates the point set described by `spec`; a pure function of it.
pub fn generate_dataset(spec: &DatasetSpec) -> Result<PointSet> {
    if spec.n < 2 || spec.m < 1 {
        return Err(Error::Domain("datasets need n >= 2 and m >= 1".into()).into());
    }
    if !(1.0..=2.0).contains(&spec.p) {
        return Err(Error::Domain("dataset norm p must lie in [1, 2]".into()).into());
    }
    if !(spec.scale > 0.0 && spec.scale.is_finite()) {
        return Err(Error::Domain("scale must be positive".into()).into());
    }
    let data = match spec.kind {
        DatasetKind::Gaussian => gaussian(spec),
        DatasetKind::Grid => grid(spec),
        DatasetKind::Clustered => clustered(spec)?,
        DatasetKind::LowDoublingCurve => curve(spec)?,
    };
    Ok(PointSet::new(spec.m, data)?)
}

fn normal(stream: &mut Stream) -> f64 {
    draw_stable(2.0, stream) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian direction rescaled to unit `ℓ_p` norm.
fn unit_vector(m: usize, p: f64, stream: &mut Stream) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| normal(stream)).collect();
        let norm = math::lp_norm(&v, p);
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn gaussian(spec: &DatasetSpec) -> Vec<f64> {
    let mut stream = Stream::new(derive_seed(spec.seed, &[0]));
    (0..spec.n * spec.m).map(|_| spec.scale * normal(&mut stream)).collect()
}

fn grid(spec: &DatasetSpec) -> Vec<f64> {
    let mut side = 1usize;
    while side.checked_pow(spec.m as u32).is_some_and(|c| c < spec.n) {
        side += 1;
    }
    let mut data = Vec::with_capacity(spec.n * spec.m);
    for i in 0..spec.n {
        let mut rest = i;
        let mut coords = vec![0.0; spec.m];
        for c in coords.iter_mut().rev() {
            *c = (rest % side) as f64 * spec.scale;
            rest /= side;
        }
        data.extend(coords);
    }
    data
}

// Points sit at center_c + r_i u_i with independent Gaussian directions, so in
// high dimension d(x, y) is close to sqrt(r_x² + r_y² + ρ_c² + ρ_c'²) where
// ρ_c = ‖center_c‖. Radii are chosen so that this lands inside [a, b].
fn clustered(spec: &DatasetSpec) -> Result<Vec<f64>> {
    let (a, b) = spec.range;
    if !(a > 0.0 && b >= 1.5 * a && b.is_finite()) {
        return Err(Error::Domain("clustered range needs 0 < a and b >= 1.5 a".into()).into());
    }
    if spec.clusters == 0 || !(0.0..0.5).contains(&spec.satellites) {
        return Err(Error::Domain("need at least one cluster and a satellite fraction in [0, 0.5)".into()).into());
    }
    let (r_lo, r_hi) = (0.75 * a, 0.9 * a);
    let rho_max = ((b * b - 2.0 * r_hi * r_hi) / 2.0).sqrt();
    let mut stream = Stream::new(derive_seed(spec.seed, &[1]));
    let centers: Vec<Vec<f64>> = (0..spec.clusters)
        .map(|_| {
            let rho = stream.uniform_in(0.0, rho_max);
            unit_vector(spec.m, spec.p, &mut stream).into_iter().map(|x| rho * x).collect()
        })
        .collect();
    let satellites = (spec.satellites * spec.n as f64).floor() as usize;
    let core = spec.n - satellites;
    let mut data = Vec::with_capacity(spec.n * spec.m);
    for i in 0..core {
        let r = stream.uniform_in(r_lo, r_hi);
        let u = unit_vector(spec.m, spec.p, &mut stream);
        data.extend(centers[i % spec.clusters].iter().zip(&u).map(|(c, x)| c + r * x));
    }
    for _ in 0..satellites {
        let parent = stream.below(core);
        let r = stream.uniform_in(0.2 * a, 0.8 * a);
        let u = unit_vector(spec.m, spec.p, &mut stream);
        let base = data[parent * spec.m..(parent + 1) * spec.m].to_vec();
        data.extend(base.iter().zip(&u).map(|(c, x)| c + r * x));
    }
    Ok(data)
}

// For p = 1 the curve is a staircase of segments whose directions have
// nonnegative entries (up to fixed per-coordinate signs), so every coordinate
// is monotone along it and ℓ_1 distance equals arc length. For p > 1 it is a
// straight line, isometric in every norm.
fn curve(spec: &DatasetSpec) -> Result<Vec<f64>> {
    let (lo, hi) = spec.gaps;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::Domain("curve gaps need 0 < lo <= hi".into()).into());
    }
    let mut stream = Stream::new(derive_seed(spec.seed, &[2]));
    let mut tau = vec![0.0];
    for _ in 1..spec.n {
        let gap = lo * (hi / lo).powf(stream.uniform_in(0.0, 1.0));
        tau.push(tau.last().unwrap() + gap);
    }
    let length = *tau.last().unwrap();
    let m = spec.m;
    let segments = if spec.p == 1.0 { (spec.n / 10).max(1) } else { 1 };
    let signs: Vec<f64> = (0..m).map(|_| if stream.below(2) == 0 { 1.0 } else { -1.0 }).collect();
    let directions: Vec<Vec<f64>> = (0..segments)
        .map(|_| {
            if spec.p == 1.0 {
                let w: Vec<f64> = (0..m).map(|_| stream.exponential()).collect();
                let total: f64 = w.iter().sum();
                w.iter().zip(&signs).map(|(x, s)| s * x / total).collect()
            } else {
                unit_vector(m, spec.p, &mut stream)
            }
        })
        .collect();
    let seg_len = length / segments as f64;
    let mut data = Vec::with_capacity(spec.n * m);
    for &t in &tau {
        let mut x = vec![0.0; m];
        let mut covered = 0.0;
        for dir in &directions {
            let step = (t - covered).clamp(0.0, seg_len);
            if step == 0.0 {
                break;
            }
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += step * di;
            }
            covered += seg_len;
        }
        data.extend(x);
    }
    Ok(data)
}
