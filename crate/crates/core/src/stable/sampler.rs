use alloc::vec::Vec;

use super::check_index;
use crate::error::{Error, Result};
use crate::math;
use crate::rng::Stream;

/// Draws one symmetric `p`-stable variate with characteristic function
/// `exp(-|t|^p)` by the Chambers–Mallows–Stuck transformation.
#[inline]
pub fn draw_stable(p: f64, stream: &mut Stream) -> f64 {
    let v = math::PI * (stream.uniform_open() - 0.5);
    if p == 1.0 {
        return math::tan(v);
    }
    let w = stream.exponential();
    if p == 2.0 {
        // sin(2V)/sqrt(cos V) * sqrt(W/cos V) = 2 sin(V) sqrt(W)
        return 2.0 * math::sin(v) * math::sqrt(w);
    }
    let cos_v = math::cos(v);
    let lead = math::sin(p * v) / math::powf(cos_v, 1.0 / p);
    let tail = math::powf(math::cos((1.0 - p) * v) / w, (1.0 - p) / p);
    lead * tail
}

/// A reproducible stream of symmetric `p`-stable variates.
///
/// The same `(p, seed)` pair always yields the same sequence; `position`
/// counts the variates drawn so far.
#[derive(Clone, Debug)]
pub struct StableSampler {
    p: f64,
    seed: u64,
    position: u64,
    stream: Stream,
}

impl StableSampler {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        check_index(p)?;
        Ok(StableSampler { p, seed, position: 0, stream: Stream::new(seed) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    #[inline]
    pub fn next_value(&mut self) -> f64 {
        self.position += 1;
        draw_stable(self.p, &mut self.stream)
    }

    /// Draws `count` i.i.d. variates and advances the stream by `count`.
    pub fn sample(&mut self, count: usize) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::domain("sample count must be at least 1"));
        }
        Ok((0..count).map(|_| self.next_value()).collect())
    }

    /// Fills `out` with fresh variates.
    pub fn fill(&mut self, out: &mut [f64]) {
        for x in out.iter_mut() {
            *x = self.next_value();
        }
    }
}
