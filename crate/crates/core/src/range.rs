//! Range embeddings: a threshold embedding whose threshold is chosen from the
//! target range `[1, R]` and whose output is rescaled to approximate `t^q`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::stable::{check_exponents, cosine_moment_unchecked, StableLaw};
use crate::threshold::ThresholdEmbedding;

/// Thresholds above this are reported as impractical.
pub const THRESHOLD_WARN_CAP: f64 = 1e12;

/// Which concentration bound sizes the target dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Bracket `s^{2q}`.
    Hoeffding,
    /// Bracket `max(s^{2q-p}/(2q-p), ε s^q)`; needs `2q > p`.
    Bennett,
    /// The smaller of the two.
    Min,
}

impl core::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hoeffding" => Ok(Method::Hoeffding),
            "bennett" => Ok(Method::Bennett),
            "min" => Ok(Method::Min),
            _ => Err(Error::domain(alloc::format!("unknown method {s:?}"))),
        }
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Method::Hoeffding => "hoeffding",
            Method::Bennett => "bennett",
            Method::Min => "min",
        })
    }
}

/// Threshold for range `[1, R]` at accuracy `ε`.
///
/// `q < p`: `R ε^{-1/2} (1 + (p-q) ε^{-(q/2+1)})^{1/(p-q)}`;
/// `q = p`: `max(R^{1/ε}, R ε^{-1/2} exp(ε^{-(q/2+1)}))`.
pub fn select_threshold(p: f64, q: f64, r: f64, eps: f64) -> Result<f64> {
    check_exponents(p, q)?;
    check_range(r, eps)?;
    let lead = r / math::sqrt(eps);
    let e = math::powf(eps, -(0.5 * q + 1.0));
    let s = if q < p {
        lead * math::powf(1.0 + (p - q) * e, 1.0 / (p - q))
    } else {
        math::powf(r, 1.0 / eps).max(lead * math::exp(e))
    };
    if !(s <= THRESHOLD_WARN_CAP) {
        log::warn!(
            "threshold s = {s:e} exceeds {THRESHOLD_WARN_CAP:e}; the (q, eps) regime is impractical, try a larger eps"
        );
    }
    Ok(s)
}

fn check_range(r: f64, eps: f64) -> Result<()> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::domain("range R must be finite and > 1"));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::domain("eps must lie in (0, 1/2)"));
    }
    Ok(())
}

/// The dimension bracket `B` of `method`, so that `k = ⌈C (ln n / ε²) B⌉`.
pub fn dimension_bracket(eps: f64, s: f64, p: f64, q: f64, method: Method) -> Result<f64> {
    let hoeffding = math::powf(s, 2.0 * q);
    let bennett = || {
        if 2.0 * q > p {
            Some((math::powf(s, 2.0 * q - p) / (2.0 * q - p)).max(eps * math::powf(s, q)))
        } else {
            None
        }
    };
    match method {
        Method::Hoeffding => Ok(hoeffding),
        Method::Bennett => {
            bennett().ok_or_else(|| Error::domain("the Bennett bracket needs 2q > p"))
        }
        Method::Min => Ok(bennett().map_or(hoeffding, |b| b.min(hoeffding))),
    }
}

/// `k = ⌈c_dim · (ln n / ε²) · B⌉`, at least 1.
pub fn required_dimension(n: usize, eps: f64, s: f64, p: f64, q: f64, method: Method, c_dim: f64) -> Result<usize> {
    check_exponents(p, q)?;
    if n < 2 {
        return Err(Error::domain("need at least two points"));
    }
    if !(s > 1.0) {
        return Err(Error::domain("threshold must exceed 1"));
    }
    if !(eps > 0.0 && eps < 1.0) || !(c_dim > 0.0) {
        return Err(Error::domain("eps must lie in (0, 1) and c_dim must be positive"));
    }
    let bracket = dimension_bracket(eps, s, p, q, method)?;
    let k = math::ceil(c_dim * math::ln(n as f64) / (eps * eps) * bracket);
    if !(k < 1e15) {
        return Err(Error::Guard(alloc::format!("target dimension {k:e} is not representable")));
    }
    Ok((k as usize).max(1))
}

/// `V(u) = (1+u) ln(1+u) - u`.
pub fn bennett_function(u: f64) -> f64 {
    (1.0 + u) * math::ln_1p(u) - u
}

/// Two-branch stand-in for `V`: `u²/2` below 1 and `u/2` above.
pub fn bennett_function_branch(u: f64) -> f64 {
    if u < 1.0 {
        0.5 * u * u
    } else {
        0.5 * u
    }
}

/// Per-pair sample-count bounds for the mean of `k` i.i.d. coordinates with
/// values in `[0, b]` to land within `z` of its expectation with failure
/// probability at most `1/n²`.
pub fn hoeffding_pair_dimension(n: usize, b: f64, z: f64) -> f64 {
    let nf = n as f64;
    b * b * math::ln(2.0 * nf * nf) / (2.0 * z * z)
}

/// Bennett counterpart of [`hoeffding_pair_dimension`]; `v` is the Bennett
/// function to use.
pub fn bennett_pair_dimension(n: usize, b: f64, z: f64, sigma2: f64, v: fn(f64) -> f64) -> f64 {
    let nf = n as f64;
    b * b * math::ln(2.0 * nf * nf) / (sigma2 * v(b * z / sigma2))
}

/// Range `b`, deviation `z` and variance `σ²` of one coordinate's
/// contribution `|ΔF_i|^q` at distance `t`.
#[derive(Clone, Copy, Debug)]
pub struct PairMoments {
    pub b: f64,
    pub z: f64,
    pub sigma2: f64,
}

pub fn pair_moments(law: &StableLaw, q: f64, s: f64, t: f64, eps: f64) -> PairMoments {
    let p_q = cosine_moment_unchecked(q);
    let sq = math::powf(s, q);
    let a = t / s;
    let mean = sq * law.sine_moment(q, a);
    let second = sq * sq / (p_q * p_q) * cosine_moment_unchecked(2.0 * q) * law.sine_moment(2.0 * q, a);
    PairMoments { b: sq / p_q, z: eps * mean, sigma2: (second - mean * mean).max(0.0) }
}

/// How the threshold embedding's output is rescaled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Divide `‖·‖_q^q` by the small-scale slope: `E|g|^q` when `q < p`,
    /// `2∫₀^{√ε s/R} u^p h` when `q = p`.
    Moment,
    /// Match the exact expected transform at the geometric centre `√R` of
    /// the range.
    Centered,
}

impl core::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moment" => Ok(Normalization::Moment),
            "centered" => Ok(Normalization::Centered),
            _ => Err(Error::domain(alloc::format!("unknown normalization {s:?}"))),
        }
    }
}

impl core::fmt::Display for Normalization {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Normalization::Moment => "moment",
            Normalization::Centered => "centered",
        })
    }
}

/// Parameters of a range embedding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub eps: f64,
    pub n: usize,
    pub method: Method,
    pub c_dim: f64,
    /// `None` picks `Moment` for `q < p` and `Centered` for `q = p`.
    pub normalization: Option<Normalization>,
    /// Overrides the computed dimension.
    pub k: Option<usize>,
}

impl RangeParams {
    pub fn new(p: f64, q: f64, r: f64, eps: f64, n: usize) -> Self {
        RangeParams { p, q, r, eps, n, method: Method::Min, c_dim: 1.0, normalization: None, k: None }
    }

    pub fn validate(&self) -> Result<()> {
        check_exponents(self.p, self.q)?;
        check_range(self.r, self.eps)?;
        if self.n < 2 {
            return Err(Error::domain("n must be at least 2"));
        }
        if self.k == Some(0) {
            return Err(Error::domain("k must be at least 1"));
        }
        Ok(())
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization.unwrap_or(if self.q < self.p { Normalization::Moment } else { Normalization::Centered })
    }
}

/// A threshold embedding tuned to `[1, R]`.
#[derive(Clone, Debug)]
pub struct RangeEmbedding {
    params: RangeParams,
    inner: ThresholdEmbedding,
    /// Multiplier applied to every output coordinate.
    scale: f64,
    /// The constant that `‖·‖_q^q` is divided by.
    divisor: f64,
}

impl RangeEmbedding {
    pub fn new(params: RangeParams, m: usize, seed: u64) -> Result<Self> {
        params.validate()?;
        let law = StableLaw::new(params.p)?;
        Self::with_law(params, m, seed, &law)
    }

    /// As [`RangeEmbedding::new`], reusing a tabulated law for `params.p`.
    pub fn with_law(params: RangeParams, m: usize, seed: u64, law: &StableLaw) -> Result<Self> {
        params.validate()?;
        if law.p() != params.p {
            return Err(Error::domain("law index differs from params.p"));
        }
        let RangeParams { p, q, r, eps, n, .. } = params;
        let s = select_threshold(p, q, r, eps)?;
        let k = match params.k {
            Some(k) => k,
            None => required_dimension(n, eps, s, p, q, params.method, params.c_dim)?,
        };
        let inner = ThresholdEmbedding::new(p, q, s, k, m, seed)?;
        let divisor = output_divisor(law, &params, s)?;
        Ok(RangeEmbedding { params, inner, scale: math::powf(divisor, -1.0 / q), divisor })
    }

    pub fn params(&self) -> &RangeParams {
        &self.params
    }
    pub fn inner(&self) -> &ThresholdEmbedding {
        &self.inner
    }
    pub fn s(&self) -> f64 {
        self.inner.s()
    }
    pub fn k(&self) -> usize {
        self.inner.k()
    }
    /// Multiplier applied to the threshold embedding's coordinates.
    pub fn scale(&self) -> f64 {
        self.scale
    }
    pub fn divisor(&self) -> f64 {
        self.divisor
    }

    pub fn embed(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = alloc::vec![0.0; self.k()];
        self.inner.embed_into(v, 1.0, self.scale, &mut out)?;
        Ok(out)
    }

    /// Deterministic bound on the scaled `‖f(v) - f(w)‖_q^q`.
    pub fn pair_cap(&self) -> f64 {
        self.inner.pair_cap() / self.divisor
    }
}

/// The divisor `D` so that `‖f(v) - f(w)‖_q^q / D ≈ t^q` on the range.
pub fn output_divisor(law: &StableLaw, params: &RangeParams, s: f64) -> Result<f64> {
    let RangeParams { p, q, r, eps, .. } = *params;
    match params.normalization() {
        Normalization::Moment if q < p => law.abs_moment(q),
        Normalization::Moment => {
            // 2∫₀^{√ε/a} u^p h(u) du at a = R/s, i.e. four times Q_a.
            Ok(4.0 * law.constant_qa(r / s, eps)?)
        }
        Normalization::Centered => {
            let tc = math::sqrt(r);
            Ok(math::powf(s / tc, q) * law.transform_h(q, tc / s)?)
        }
    }
}
