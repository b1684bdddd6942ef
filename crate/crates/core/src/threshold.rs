//! The sine-dampened stable projection: each output coordinate is
//! `A sin(φ_i + (2/s) <g_i, v>)` with amplitude `A = s / (2 P_q^{1/q})`,
//! scaled by `k^{-1/q}`.

use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::math;
use crate::rng::Stream;
use crate::stable::{check_exponents, cosine_moment_unchecked, draw_stable, StableLaw};

const MATRIX_STREAM: u64 = 0;
const PHASE_STREAM: u64 = 1;

/// One output coordinate, borrowed from a [`ThresholdEmbedding`].
#[derive(Clone, Copy, Debug)]
pub struct CoordinateEmbedding<'a> {
    pub phase: f64,
    pub row: &'a [f64],
    pub s: f64,
    pub p: f64,
    pub q: f64,
    amplitude: f64,
}

impl CoordinateEmbedding<'_> {
    /// Largest possible magnitude, `s / (2 P_q^{1/q})`.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn eval(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.row.len(), v.len())?;
        let dot = math::dot_compensated(self.row, v);
        Ok(self.amplitude * math::sin(self.phase + 2.0 * dot / self.s))
    }
}

/// Frozen randomness of the `k`-coordinate embedding of `R^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEmbedding {
    p: f64,
    q: f64,
    s: f64,
    k: usize,
    m: usize,
    seed: u64,
    phases: Vec<f64>,
    matrix: Vec<f64>,
    amplitude: f64,
    coord_scale: f64,
}

impl ThresholdEmbedding {
    /// Draws the `k × m` stable matrix and the `k` phases from two
    /// independent streams of `seed`. Never looks at data.
    pub fn new(p: f64, q: f64, s: f64, k: usize, m: usize, seed: u64) -> Result<Self> {
        check_exponents(p, q)?;
        if !(s > 1.0) || !s.is_finite() {
            return Err(Error::domain("threshold s must be finite and > 1"));
        }
        if k == 0 || m == 0 {
            return Err(Error::domain("k and m must be at least 1"));
        }
        let mut entries = Stream::with_stream(seed, MATRIX_STREAM);
        let matrix = (0..k * m).map(|_| draw_stable(p, &mut entries)).collect();
        let mut angles = Stream::with_stream(seed, PHASE_STREAM);
        let phases = (0..k).map(|_| angles.uniform_in(0.0, math::TAU)).collect();
        let p_q = cosine_moment_unchecked(q);
        Ok(ThresholdEmbedding {
            p,
            q,
            s,
            k,
            m,
            seed,
            phases,
            matrix,
            amplitude: s / (2.0 * math::powf(p_q, 1.0 / q)),
            coord_scale: math::powf(k as f64, -1.0 / q),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Row-major `k × m` stable matrix.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn coordinate(&self, i: usize) -> CoordinateEmbedding<'_> {
        CoordinateEmbedding {
            phase: self.phases[i],
            row: &self.matrix[i * self.m..(i + 1) * self.m],
            s: self.s,
            p: self.p,
            q: self.q,
            amplitude: self.amplitude,
        }
    }

    /// Deterministic bound on `‖f(v) - f(w)‖_q^q`, namely `s^q / P_q`.
    pub fn pair_cap(&self) -> f64 {
        math::powf(self.s, self.q) / cosine_moment_unchecked(self.q)
    }

    pub fn embed_point(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = alloc::vec![0.0; self.k];
        self.embed_into(v, 1.0, 1.0, &mut out)?;
        Ok(out)
    }

    /// Writes `out_scale · f(in_scale · v)` into `out`, which must hold `k`
    /// values.
    pub fn embed_into(&self, v: &[f64], in_scale: f64, out_scale: f64, out: &mut [f64]) -> Result<()> {
        check_dim(self.m, v.len())?;
        check_dim(self.k, out.len())?;
        let freq = 2.0 * in_scale / self.s;
        let amp = out_scale * self.coord_scale * self.amplitude;
        for ((o, row), phase) in out.iter_mut().zip(self.matrix.chunks_exact(self.m)).zip(&self.phases) {
            *o = amp * math::sin(phase + freq * math::dot_compensated(row, v));
        }
        Ok(())
    }

    /// Adds `out_scale · f(in_scale · v)` to `out`.
    pub fn accumulate_into(&self, v: &[f64], in_scale: f64, out_scale: f64, out: &mut [f64]) -> Result<()> {
        check_dim(self.m, v.len())?;
        check_dim(self.k, out.len())?;
        let freq = 2.0 * in_scale / self.s;
        let amp = out_scale * self.coord_scale * self.amplitude;
        for ((o, row), phase) in out.iter_mut().zip(self.matrix.chunks_exact(self.m)).zip(&self.phases) {
            *o += amp * math::sin(phase + freq * math::dot_compensated(row, v));
        }
        Ok(())
    }
}

impl StableLaw {
    /// `s^q H(t/s)`, the mean of `‖f(v) - f(w)‖_q^q` at `‖v - w‖_p = t`.
    pub fn expected_transform(&self, q: f64, s: f64, t: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::domain("threshold must be positive"));
        }
        if !(t >= 0.0) {
            return Err(Error::domain("distance must be nonnegative"));
        }
        Ok(math::powf(s, q) * self.transform_h(q, t / s)?)
    }
}

/// `s^q H(t/s)` for the standard `p`-stable law.
pub fn expected_transform(p: f64, q: f64, s: f64, t: f64) -> Result<f64> {
    check_exponents(p, q)?;
    StableLaw::new(p)?.expected_transform(q, s, t)
}
