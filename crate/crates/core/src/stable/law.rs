//! Density, distribution function and moment integrals of the symmetric
//! `p`-stable law with characteristic function `exp(-|t|^p)`.
//!
//! The density on `[0, TABLE_END]` is tabulated once per law as a piecewise
//! Chebyshev interpolant of the inversion integral; beyond that it follows
//! the convergent-in-practice asymptotic series
//! `h(x) ~ Σ_k A_k x^{-(pk+1)}`, which also gives closed tail integrals.

use alloc::vec::Vec;

use super::check_index;
use crate::error::Result;
use crate::math::{self, CompensatedSum};
use crate::quad::{self, ChebSegment, Tolerance};

/// Right end of the tabulated range.
pub(crate) const TABLE_END: f64 = 40.0;
const SERIES_TERMS: usize = 48;
const BREAKS: [f64; 10] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 14.0, 22.0, 31.0, TABLE_END];
const NODES: usize = 32;
const FIT_TOL: f64 = 1e-15;

/// Truncation point of the inversion integral: `exp(-T^p) < 1e-20`.
fn cutoff(p: f64) -> f64 {
    math::powf(46.06, 1.0 / p)
}

/// `sin(π y)` with exact zeros at integer `y`.
fn sin_pi(y: f64) -> f64 {
    let r = y - 2.0 * math::floor(0.5 * y);
    if r == math::floor(r) {
        0.0
    } else {
        math::sin(math::PI * r)
    }
}

/// Evaluates `(1/π)∫₀^∞ cos(tx) e^{-t^p} dt` by integrating between the zeros
/// of `cos(tx)` up to the truncation point.
pub fn density_direct(p: f64, x: f64) -> f64 {
    let x = x.abs();
    let t_end = cutoff(p);
    let tol = Tolerance { abs: 1e-17, rel: 1e-13, max_panels: 200 };
    let kernel = |t: f64| math::cos(t * x) * math::exp(-math::powf(t, p));
    let mut acc = CompensatedSum::new();
    if x * t_end <= math::TAU {
        let split = t_end.min(1.0);
        acc.add(quad::integrate(kernel, 0.0, split, tol).0);
        acc.add(quad::integrate(kernel, split, t_end, tol).0);
    } else {
        let mut lo = 0.0;
        let mut j = 0.5;
        loop {
            let hi = (j * math::PI / x).min(t_end);
            acc.add(quad::integrate(kernel, lo, hi, tol).0);
            if hi >= t_end {
                break;
            }
            lo = hi;
            j += 1.0;
        }
    }
    acc.value() / math::PI
}

/// Sums an asymptotic series, stopping at the smallest term. Returns `None`
/// when the smallest term is not negligible against the sum.
fn sum_asymptotic(terms: impl Iterator<Item = f64>) -> Option<f64> {
    let mut acc = CompensatedSum::new();
    let mut last = f64::INFINITY;
    let mut any = false;
    for t in terms {
        let m = t.abs();
        if m == 0.0 {
            continue;
        }
        if m > last {
            break;
        }
        any = true;
        acc.add(t);
        last = m;
        if m <= 1e-17 * acc.value().abs() {
            return Some(acc.value());
        }
    }
    let sum = acc.value();
    if !any || last <= 1e-12 * sum.abs() {
        Some(sum)
    } else {
        None
    }
}

/// Coefficients `A_k` of the large-argument density expansion.
pub(crate) fn series_coefficients(p: f64) -> Vec<f64> {
    (1..=SERIES_TERMS)
        .map(|k| {
            let kf = k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let s = sin_pi(0.5 * kf * p);
            if s == 0.0 {
                0.0
            } else {
                sign * s * math::exp(math::ln_gamma(p * kf + 1.0) - math::ln_gamma(kf + 1.0)) / math::PI
            }
        })
        .collect()
}

/// Density at `x > 0` from the large-argument expansion.
pub(crate) fn density_from_series(p: f64, coeffs: &[f64], x: f64) -> Option<f64> {
    let xp = math::powf(x, -p);
    let mut pw = 1.0 / x;
    sum_asymptotic(coeffs.iter().map(|a| {
        pw *= xp;
        a * pw
    }))
}

/// Tabulated symmetric `p`-stable law.
#[derive(Clone, Debug)]
pub struct StableLaw {
    p: f64,
    density: Vec<ChebSegment>,
    primitive: Vec<ChebSegment>,
    /// `∫₀^{lo}` of the density for each segment.
    cumulative: Vec<f64>,
    series: Vec<f64>,
}

impl StableLaw {
    pub fn new(p: f64) -> Result<Self> {
        check_index(p)?;
        let mut density = Vec::new();
        for w in BREAKS.windows(2) {
            fit_adaptive(p, w[0], w[1], &mut density);
        }
        let primitive: Vec<ChebSegment> = density.iter().map(ChebSegment::antiderivative).collect();
        let mut cumulative = Vec::with_capacity(primitive.len());
        let mut acc = CompensatedSum::new();
        for seg in &primitive {
            cumulative.push(acc.value());
            acc.add(seg.eval(seg.hi));
        }
        Ok(StableLaw { p, density, primitive, cumulative, series: series_coefficients(p) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    fn segment_index(&self, x: f64) -> usize {
        // Segments are few; a linear scan beats a binary search here.
        self.density.iter().position(|s| x <= s.hi).unwrap_or(self.density.len() - 1)
    }

    /// Density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        let x = x.abs();
        if x <= TABLE_END {
            // The fit carries ~1e-17 absolute error, enough to dip below zero
            // deep in the Gaussian tail.
            self.density[self.segment_index(x)].eval(x).max(0.0)
        } else if x.is_infinite() {
            0.0
        } else {
            self.density_series(x).unwrap_or_else(|| density_direct(self.p, x))
        }
    }

    fn density_series(&self, x: f64) -> Option<f64> {
        density_from_series(self.p, &self.series, x)
    }

    /// `∫_x^∞ u^r h(u) du` for `x ≥ TABLE_END` and `r < p`, from the series.
    fn tail_series(&self, r: f64, x: f64) -> Option<f64> {
        let p = self.p;
        let xp = math::powf(x, -p);
        let mut pw = math::powf(x, r);
        sum_asymptotic(self.series.iter().enumerate().map(|(i, a)| {
            pw *= xp;
            a * pw / (p * (i + 1) as f64 - r)
        }))
    }

    /// `∫_lo^hi u^r h(u) du` for `TABLE_END ≤ lo ≤ hi < ∞`, from the series.
    fn band_series(&self, r: f64, lo: f64, hi: f64) -> Option<f64> {
        let p = self.p;
        sum_asymptotic(self.series.iter().enumerate().map(|(i, a)| {
            let e = r - p * (i + 1) as f64;
            let piece = if e == 0.0 {
                math::ln(hi / lo)
            } else {
                (math::powf(hi, e) - math::powf(lo, e)) / e
            };
            a * piece
        }))
    }

    /// Mass above `x ≥ 0`, i.e. `P(g > x)`.
    pub fn upper_tail(&self, x: f64) -> f64 {
        let x = x.abs();
        if x <= TABLE_END {
            let i = self.segment_index(x);
            (0.5 - (self.cumulative[i] + self.primitive[i].eval(x))).clamp(0.0, 0.5)
        } else if x.is_infinite() {
            0.0
        } else {
            self.tail_series(0.0, x).unwrap_or_else(|| {
                let tol = Tolerance { abs: 1e-16, rel: 1e-12, max_panels: 400 };
                let head = quad::integrate(|u| self.density(u), TABLE_END, x, tol).0;
                0.5 - self.cumulative_to_end() - head
            })
        }
    }

    fn cumulative_to_end(&self) -> f64 {
        let last = self.primitive.len() - 1;
        self.cumulative[last] + self.primitive[last].eval(TABLE_END)
    }

    /// Distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        let upper = self.upper_tail(x);
        if x >= 0.0 {
            1.0 - upper
        } else {
            upper
        }
    }

    /// `∫₀^U u^r h(u) du` for `r ≥ 0`, `U ≥ 0`.
    pub fn truncated_moment(&self, r: f64, upper: f64) -> f64 {
        let tol = Tolerance { abs: 1e-15, rel: 1e-12, max_panels: 200 };
        let head_end = upper.min(TABLE_END);
        let mut acc = CompensatedSum::new();
        for seg in &self.density {
            if seg.lo >= head_end {
                break;
            }
            let hi = seg.hi.min(head_end);
            acc.add(quad::integrate(|u| math::abs_pow(u, r) * seg.eval(u), seg.lo, hi, tol).0);
        }
        if upper > TABLE_END {
            let band = self.band_series(r, TABLE_END, upper).unwrap_or_else(|| {
                quad::integrate(|u| math::abs_pow(u, r) * self.density(u), TABLE_END, upper, tol).0
            });
            acc.add(band);
        }
        acc.value()
    }

    /// `∫_x^∞ u^r h(u) du` for `0 ≤ r < p` and `x ≥ TABLE_END`.
    pub(crate) fn tail_moment(&self, r: f64, x: f64) -> f64 {
        debug_assert!(r < self.p && x >= TABLE_END);
        self.tail_series(r, x).unwrap_or(0.0)
    }

    /// `E|g|^r` for `0 ≤ r < p`; unchecked.
    pub(crate) fn abs_moment_unchecked(&self, r: f64) -> f64 {
        2.0 * (self.truncated_moment(r, TABLE_END) + self.tail_moment(r, TABLE_END))
    }
}

fn fit_adaptive(p: f64, lo: f64, hi: f64, out: &mut Vec<ChebSegment>) {
    let seg = ChebSegment::fit(|x| density_direct(p, x), lo, hi, NODES);
    if seg.tail_magnitude() <= FIT_TOL || hi - lo < 1e-3 {
        out.push(seg);
    } else {
        let mid = 0.5 * (lo + hi);
        fit_adaptive(p, lo, mid, out);
        fit_adaptive(p, mid, hi, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cauchy(x: f64) -> f64 {
        1.0 / (math::PI * (1.0 + x * x))
    }

    fn gauss(x: f64) -> f64 {
        math::exp(-x * x / 4.0) / (2.0 * math::sqrt(math::PI))
    }

    #[test]
    fn direct_matches_closed_forms() {
        for x in [0.0, 0.5, 1.0, 2.0, 5.0, 17.3, 39.0] {
            assert!((density_direct(1.0, x) - cauchy(x)).abs() < 1e-12, "{x}");
            assert!((density_direct(2.0, x) - gauss(x)).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn table_and_series_match_closed_forms() {
        let c = StableLaw::new(1.0).unwrap();
        let g = StableLaw::new(2.0).unwrap();
        for i in 0..400 {
            let x = 0.137 * i as f64;
            assert!((c.density(x) - cauchy(x)).abs() < 1e-14, "{x}");
            assert!((g.density(x) - gauss(x)).abs() < 1e-14, "{x}");
        }
        for x in [40.5, 100.0, 1e3, 1e6] {
            assert!((c.density(x) - cauchy(x)).abs() < 1e-12 * cauchy(x), "{x}");
            assert!(g.density(x).abs() < 1e-300);
        }
    }

    #[test]
    fn series_and_table_agree_at_the_seam() {
        for p in [1.1, 1.3, 1.5, 1.7, 1.9] {
            let law = StableLaw::new(p).unwrap();
            for x in [40.0, 45.0, 60.0] {
                let direct = density_direct(p, x);
                let via = law.density_series(x).unwrap();
                assert!((via - direct).abs() < 1e-13 + 1e-9 * direct, "p={p} x={x}: {via} {direct}");
            }
        }
    }

    #[test]
    fn cauchy_distribution_function() {
        let law = StableLaw::new(1.0).unwrap();
        for x in [-100.0, -3.0, -0.2, 0.0, 0.7, 12.0, 39.9, 40.1, 500.0] {
            let exact = 0.5 + libm::atan(x) / math::PI;
            assert!((law.cdf(x) - exact).abs() < 1e-13, "{x}: {} {exact}", law.cdf(x));
        }
    }

    #[test]
    fn total_mass_is_one() {
        for p in [1.0, 1.25, 1.5, 1.75, 2.0] {
            let law = StableLaw::new(p).unwrap();
            assert!((law.upper_tail(0.0) - 0.5).abs() < 1e-13, "{p}");
        }
    }

    #[test]
    fn fractional_moments_match_closed_form() {
        // E|g|^r = 2^r Γ((1+r)/2) Γ(1-r/p) / (√π Γ(1-r/2))
        for (p, r) in [(1.0, 0.5), (1.5, 0.9), (2.0, 1.0), (1.8, 1.5), (1.3, 0.2)] {
            let law = StableLaw::new(p).unwrap();
            let exact = math::powf(2.0, r) * math::gamma(0.5 * (1.0 + r)) * math::gamma(1.0 - r / p)
                / (math::sqrt(math::PI) * math::gamma(1.0 - 0.5 * r));
            let got = law.abs_moment_unchecked(r);
            assert!((got - exact).abs() < 1e-9 * exact, "p={p} r={r}: {got} vs {exact}");
        }
    }
}
