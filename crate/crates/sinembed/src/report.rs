//! Distortion measurement: embed a point set, evaluate sampled pairs and
//! summarize the ratio of embedded to ideal distance.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use sinembed_core::math;
use sinembed_core::metric::{intrinsic_embedding, IntrinsicConfig};
use sinembed_core::rng::derive_seed;
use sinembed_core::snowflake::{SnowflakeEmbedding, SnowflakeParams};
use sinembed_core::{PointSet, RangeEmbedding, RangeParams, StableLaw, ThresholdEmbedding};

use crate::error::Result;

/// Default number of pairs evaluated per report.
pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

/// Quantile levels reported per distance band.
pub const QUANTILE_LEVELS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

const PAIR_STREAM: u64 = 0x7061_6972;

/// Which map to measure, with its parameters.
#[derive(Clone, Debug)]
pub enum EmbeddingSpec {
    /// The input itself; every ratio is 1.
    Identity { p: f64 },
    /// Fixed-threshold map; compared with `s^q H(t/s)` in `q`-th powers.
    Threshold { p: f64, q: f64, s: f64, k: usize },
    /// Range map; compared with `t^q` in `q`-th powers.
    Range(RangeParams),
    /// Calibrated snowflake; compared with `t^α` as distances.
    Snowflake(SnowflakeParams),
    /// Partition-wise map of the set; compared with `s^q H(t/s)` in `q`-th powers.
    Intrinsic { p: f64, q: f64, s: f64, eps: f64, config: IntrinsicConfig },
}

impl EmbeddingSpec {
    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingSpec::Identity { .. } => "identity",
            EmbeddingSpec::Threshold { .. } => "threshold",
            EmbeddingSpec::Range(_) => "range",
            EmbeddingSpec::Snowflake(_) => "snowflake",
            EmbeddingSpec::Intrinsic { .. } => "intrinsic",
        }
    }

    /// Input norm.
    pub fn p(&self) -> f64 {
        match self {
            EmbeddingSpec::Identity { p } | EmbeddingSpec::Threshold { p, .. } | EmbeddingSpec::Intrinsic { p, .. } => *p,
            EmbeddingSpec::Range(r) => r.p,
            EmbeddingSpec::Snowflake(s) => s.p,
        }
    }

    /// Accuracy the map was built for, used as the default tolerance.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            EmbeddingSpec::Identity { .. } => 0.0,
            EmbeddingSpec::Threshold { .. } => 0.1,
            EmbeddingSpec::Range(r) => r.eps,
            EmbeddingSpec::Snowflake(s) => s.eps,
            EmbeddingSpec::Intrinsic { eps, .. } => *eps,
        }
    }
}

/// One evaluated pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    /// Input distance.
    pub t: f64,
    pub ideal: f64,
    pub embedded: f64,
    pub ratio: f64,
    pub in_range: bool,
}

/// Ratio quantiles of the pairs whose distance falls in one decade.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandSummary {
    /// `floor(log10 t)`.
    pub decade: i32,
    pub count: usize,
    pub quantiles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportSummary {
    pub kind: String,
    pub seed: u64,
    pub parameters: Vec<(String, String)>,
    pub points: usize,
    pub pairs_total: usize,
    pub pairs_evaluated: usize,
    pub in_range_pairs: usize,
    pub tolerance: f64,
    /// Share of in-range pairs with ratio in `[1 - tol, 1 + tol]`.
    pub within_tolerance: f64,
    pub quantile_levels: Vec<f64>,
    pub bands: Vec<BandSummary>,
}

#[derive(Clone, Debug)]
pub struct DistortionReport {
    pub records: Vec<PairRecord>,
    pub summary: ReportSummary,
    /// Wall-clock seconds per stage; kept out of the written report.
    pub timings: Vec<(String, f64)>,
}

/// How the embedded coordinates are compared with the input distance.
struct Measure {
    /// Compare `‖·‖_q^q` when set, `‖·‖_q` otherwise.
    power: bool,
    q: f64,
    ideal: Box<dyn Fn(f64) -> f64 + Sync>,
    in_range: Box<dyn Fn(f64) -> bool + Sync>,
}

struct Built {
    images: Vec<Vec<f64>>,
    measure: Measure,
    parameters: Vec<(String, String)>,
}

fn param(name: &str, v: impl ToString) -> (String, String) {
    (name.to_string(), v.to_string())
}

fn embed_all(points: &PointSet, f: impl Fn(&[f64]) -> sinembed_core::Result<Vec<f64>> + Sync) -> Result<Vec<Vec<f64>>> {
    let n = points.len();
    Ok((0..n).into_par_iter().map(|i| f(points.point(i))).collect::<sinembed_core::Result<Vec<_>>>()?)
}

fn transform_measure(p: f64, q: f64, s: f64) -> Result<Measure> {
    let law = StableLaw::new(p)?;
    law.transform_h(q, 1.0)?;
    Ok(Measure {
        power: true,
        q,
        ideal: Box::new(move |t| law.expected_transform(q, s, t).unwrap_or(f64::NAN)),
        in_range: Box::new(move |t| (1.0..=s).contains(&t)),
    })
}

fn build(spec: &EmbeddingSpec, points: &PointSet, seed: u64) -> Result<Built> {
    let m = points.dim();
    Ok(match spec {
        EmbeddingSpec::Identity { p } => {
            let p = *p;
            Built {
                images: points.iter().map(<[f64]>::to_vec).collect(),
                measure: Measure { power: false, q: p, ideal: Box::new(|t| t), in_range: Box::new(|_| true) },
                parameters: vec![param("p", p)],
            }
        }
        EmbeddingSpec::Threshold { p, q, s, k } => {
            let e = ThresholdEmbedding::new(*p, *q, *s, *k, m, seed)?;
            Built {
                images: embed_all(points, |x| e.embed_point(x))?,
                measure: transform_measure(*p, *q, *s)?,
                parameters: vec![param("p", p), param("q", q), param("s", s), param("k", k)],
            }
        }
        EmbeddingSpec::Range(params) => {
            let e = RangeEmbedding::new(*params, m, seed)?;
            let (q, r) = (params.q, params.r);
            Built {
                images: embed_all(points, |x| e.embed(x))?,
                measure: Measure {
                    power: true,
                    q,
                    ideal: Box::new(move |t| t.powf(q)),
                    in_range: Box::new(move |t| (1.0..=r).contains(&t)),
                },
                parameters: vec![
                    param("p", params.p),
                    param("q", q),
                    param("R", r),
                    param("eps", params.eps),
                    param("n", params.n),
                    param("method", params.method),
                    param("c_dim", params.c_dim),
                    param("normalization", params.normalization()),
                    param("s", e.s()),
                    param("k", e.k()),
                ],
            }
        }
        EmbeddingSpec::Snowflake(params) => {
            let e = SnowflakeEmbedding::build(points, *params, seed)?;
            let alpha = params.alpha;
            Built {
                images: embed_all(points, |x| e.embed(x))?,
                measure: Measure {
                    power: false,
                    q: params.q,
                    ideal: Box::new(move |t| t.powf(alpha)),
                    in_range: Box::new(|_| true),
                },
                parameters: vec![
                    param("alpha", alpha),
                    param("eps", params.eps),
                    param("p", params.p),
                    param("q", params.q),
                    param("kprime", params.k_prime),
                    param("ddim", e.ddim()),
                    param("v", e.v()),
                    param("scales", e.scales().len()),
                    param("M", e.m_const()),
                ],
            }
        }
        EmbeddingSpec::Intrinsic { p, q, s, eps, config } => {
            let e = intrinsic_embedding(points, *s, *p, *q, *eps, seed, *config)?;
            Built {
                images: e.images.iter().map(<[f64]>::to_vec).collect(),
                measure: transform_measure(*p, *q, *s)?,
                parameters: vec![
                    param("p", p),
                    param("q", q),
                    param("s", s),
                    param("eps", eps),
                    param("kpart", config.k_part),
                    param("ddim", e.ddim),
                    param("partitions", e.partitions()),
                    param("net", e.net.len()),
                ],
            }
        }
    })
}

/// Pairs `(i, j)`, `i < j`, to evaluate: all of them when they fit in the
/// budget, otherwise a uniform sample without replacement; sorted by their
/// row-major pair index.
pub fn sample_pairs(n: usize, budget: usize, seed: u64) -> Vec<(usize, usize)> {
    let total = n * n.saturating_sub(1) / 2;
    if total <= budget {
        return (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[PAIR_STREAM]));
    let mut picks = index::sample(&mut rng, total, budget).into_vec();
    picks.sort_unstable();
    // Row i starts at offset(i) = i n - i (i + 1) / 2.
    let offset = |i: usize| i * n - i * (i + 1) / 2;
    picks
        .into_iter()
        .map(|idx| {
            let (mut lo, mut hi) = (0, n - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if offset(mid) <= idx {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (lo, lo + 1 + idx - offset(lo))
        })
        .collect()
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], level: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = level * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-decade summary and tolerance share of `records`.
pub fn summarize(records: &[PairRecord], tolerance: f64) -> (Vec<BandSummary>, usize, f64) {
    let mut bands: Vec<(i32, Vec<f64>)> = Vec::new();
    for r in records.iter().filter(|r| r.t > 0.0 && r.ratio.is_finite()) {
        let decade = r.t.log10().floor() as i32;
        match bands.iter_mut().find(|(d, _)| *d == decade) {
            Some((_, v)) => v.push(r.ratio),
            None => bands.push((decade, vec![r.ratio])),
        }
    }
    bands.sort_by_key(|(d, _)| *d);
    let bands = bands
        .into_iter()
        .map(|(decade, mut v)| {
            v.sort_by(f64::total_cmp);
            BandSummary { decade, count: v.len(), quantiles: QUANTILE_LEVELS.iter().map(|&l| quantile(&v, l)).collect() }
        })
        .collect();
    let in_range: Vec<&PairRecord> = records.iter().filter(|r| r.in_range).collect();
    let within = in_range.iter().filter(|r| (r.ratio - 1.0).abs() <= tolerance + 1e-12).count();
    let share = if in_range.is_empty() { f64::NAN } else { within as f64 / in_range.len() as f64 };
    (bands, in_range.len(), share)
}

/// Embeds `points` with the map described by `spec` (seeded by `seed`),
/// evaluates up to `budget` pairs and summarizes their distortion.
pub fn distortion_report(
    spec: &EmbeddingSpec,
    points: &PointSet,
    budget: usize,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<DistortionReport> {
    let mut timings = Vec::new();
    let start = Instant::now();
    let built = build(spec, points, seed)?;
    timings.push(("embed".to_string(), start.elapsed().as_secs_f64()));

    let start = Instant::now();
    let p = spec.p();
    let pairs = sample_pairs(points.len(), budget, seed);
    let measure = &built.measure;
    let images = &built.images;
    let records: Vec<PairRecord> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let t = points.dist(i, j, p);
            let embedded = if measure.power {
                math::lp_dist_pow(&images[i], &images[j], measure.q)
            } else {
                math::lp_dist(&images[i], &images[j], measure.q)
            };
            let ideal = (measure.ideal)(t);
            let ratio = if ideal > 0.0 {
                embedded / ideal
            } else if embedded == 0.0 {
                1.0
            } else {
                f64::INFINITY
            };
            PairRecord { i, j, t, ideal, embedded, ratio, in_range: (measure.in_range)(t) }
        })
        .collect();
    timings.push(("pairs".to_string(), start.elapsed().as_secs_f64()));

    let tolerance = tolerance.unwrap_or_else(|| spec.default_tolerance());
    let (bands, in_range_pairs, within_tolerance) = summarize(&records, tolerance);
    let n = points.len();
    let summary = ReportSummary {
        kind: spec.name().to_string(),
        seed,
        parameters: built.parameters,
        points: n,
        pairs_total: n * (n - 1) / 2,
        pairs_evaluated: records.len(),
        in_range_pairs,
        tolerance,
        within_tolerance,
        quantile_levels: QUANTILE_LEVELS.to_vec(),
        bands,
    };
    Ok(DistortionReport { records, summary, timings })
}

impl DistortionReport {
    /// CSV records framed by `#` header and summary lines. `command` is the
    /// full invocation that reproduces the report.
    pub fn to_text(&self, command: &str) -> String {
        let s = &self.summary;
        let mut out = String::new();
        writeln!(out, "# sinembed distortion report").unwrap();
        writeln!(out, "# command: {command}").unwrap();
        writeln!(out, "# kind: {}", s.kind).unwrap();
        writeln!(out, "# seed: {}", s.seed).unwrap();
        for (k, v) in &s.parameters {
            writeln!(out, "# param {k} = {v}").unwrap();
        }
        writeln!(out, "# pairs: {} of {} over {} points", s.pairs_evaluated, s.pairs_total, s.points).unwrap();
        out.push_str(&self.records_csv());
        out.push_str(&self.summary_text());
        out
    }

    pub fn records_csv(&self) -> String {
        let mut out = String::from("i,j,t,ideal,embedded,ratio,in_range\n");
        for r in &self.records {
            writeln!(out, "{},{},{},{},{},{},{}", r.i, r.j, r.t, r.ideal, r.embedded, r.ratio, u8::from(r.in_range)).unwrap();
        }
        out
    }

    pub fn summary_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::from("# summary\n# decade,count");
        for l in &s.quantile_levels {
            write!(out, ",q{:02}", (l * 100.0).round() as u32).unwrap();
        }
        out.push('\n');
        for b in &s.bands {
            write!(out, "# {},{}", b.decade, b.count).unwrap();
            for q in &b.quantiles {
                write!(out, ",{q:.6}").unwrap();
            }
            out.push('\n');
        }
        writeln!(
            out,
            "# within 1 +/- {}: {:.4} of {} in-range pairs",
            s.tolerance, s.within_tolerance, s.in_range_pairs
        )
        .unwrap();
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}
