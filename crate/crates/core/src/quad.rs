//! Numerical integration and approximation primitives: globally adaptive
//! Gauss–Kronrod (7/15) integration and piecewise Chebyshev interpolants.

use alloc::vec::Vec;

use crate::math;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod 15 panel: returns (estimate, error estimate).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        let r = math::powf(200.0 * err / resasc, 1.5);
        err = resasc * if r < 1.0 { r } else { 1.0 };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * resabs;
        if floor > err {
            err = floor;
        }
    }
    (result, err)
}

/// Tolerances for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-11, max_panels: 400 }
    }
}

/// Globally adaptive integration of `f` over `[a, b]`: the panel with the
/// largest error estimate is bisected until the summed error meets the
/// tolerance or the panel budget runs out.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let (r0, e0) = gk15(&mut f, a, b);
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(32);
    panels.push((a, b, r0, e0));
    let mut total = r0;
    let mut err = e0;
    while err > tol.abs.max(tol.rel * total.abs()) && panels.len() < tol.max_panels {
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, r, e) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Panel is at floating-point resolution; keep its estimate.
            panels.push((lo, hi, r, 0.0));
            err -= e;
            continue;
        }
        let (r1, e1) = gk15(&mut f, lo, mid);
        let (r2, e2) = gk15(&mut f, mid, hi);
        total += r1 + r2 - r;
        err += e1 + e2 - e;
        panels.push((lo, mid, r1, e1));
        panels.push((mid, hi, r2, e2));
    }
    // Re-sum to shed the drift of the running updates.
    let mut acc = math::CompensatedSum::new();
    let mut err_acc = 0.0;
    for p in &panels {
        acc.add(p.2);
        err_acc += p.3;
    }
    (acc.value(), err_acc)
}

/// Chebyshev interpolant of a smooth function on `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct ChebSegment {
    pub lo: f64,
    pub hi: f64,
    coeffs: Vec<f64>,
}

impl ChebSegment {
    /// Interpolates `f` at `n` Chebyshev points of the first kind.
    pub fn fit<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize) -> Self {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let values: Vec<f64> = (0..n)
            .map(|k| {
                let theta = math::PI * (k as f64 + 0.5) / n as f64;
                f(mid + half * math::cos(theta))
            })
            .collect();
        let coeffs = (0..n)
            .map(|j| {
                let mut acc = math::CompensatedSum::new();
                for (k, v) in values.iter().enumerate() {
                    acc.add(v * math::cos(math::PI * j as f64 * (k as f64 + 0.5) / n as f64));
                }
                2.0 * acc.value() / n as f64
            })
            .collect();
        ChebSegment { lo, hi, coeffs }
    }

    /// Clenshaw evaluation.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let y = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let y2 = 2.0 * y;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + y2 * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        y * b1 - b2 + 0.5 * self.coeffs[0]
    }

    /// Magnitude of the trailing coefficients, a proxy for interpolation error.
    pub fn tail_magnitude(&self) -> f64 {
        self.coeffs.iter().rev().take(3).map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// The antiderivative that vanishes at `lo`.
    pub fn antiderivative(&self) -> ChebSegment {
        let n = self.coeffs.len();
        let half = 0.5 * (self.hi - self.lo);
        let c = |j: usize| if j < n { self.coeffs[j] } else { 0.0 };
        let mut out = Vec::with_capacity(n + 1);
        out.push(0.0);
        for j in 1..=n {
            out.push(half * (c(j - 1) - c(j + 1)) / (2.0 * j as f64));
        }
        let mut seg = ChebSegment { lo: self.lo, hi: self.hi, coeffs: out };
        let at_lo = seg.eval(self.lo);
        seg.coeffs[0] = -2.0 * at_lo;
        seg
    }
}
