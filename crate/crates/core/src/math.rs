//! Thin wrappers over `libm` so the rest of the crate reads like ordinary
//! float code without `std`.

pub use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn tan(x: f64) -> f64 {
    libm::tan(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}
#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}
#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `|x|^e` with the convention `0^e = 0` for `e > 0`.
#[inline]
pub fn abs_pow(x: f64, e: f64) -> f64 {
    let a = x.abs();
    if e == 1.0 {
        a
    } else if e == 2.0 {
        a * a
    } else if a == 0.0 {
        0.0
    } else {
        powf(a, e)
    }
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        CompensatedSum { sum: 0.0, carry: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Compensated dot product; stable rows are heavy-tailed, so plain summation
/// loses digits when a few huge entries cancel.
#[inline]
pub fn dot_compensated(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = CompensatedSum::new();
    for (x, y) in a.iter().zip(b) {
        acc.add(x * y);
    }
    acc.value()
}

/// `‖a - b‖_p^p`.
pub fn lp_dist_pow(a: &[f64], b: &[f64], p: f64) -> f64 {
    let mut acc = 0.0;
    if p == 1.0 {
        for (x, y) in a.iter().zip(b) {
            acc += (x - y).abs();
        }
    } else if p == 2.0 {
        for (x, y) in a.iter().zip(b) {
            let d = x - y;
            acc += d * d;
        }
    } else {
        for (x, y) in a.iter().zip(b) {
            acc += abs_pow(x - y, p);
        }
    }
    acc
}

/// `‖a - b‖_p`.
pub fn lp_dist(a: &[f64], b: &[f64], p: f64) -> f64 {
    let s = lp_dist_pow(a, b, p);
    if p == 1.0 {
        s
    } else if p == 2.0 {
        sqrt(s)
    } else {
        powf(s, 1.0 / p)
    }
}

/// `‖a‖_p`.
pub fn lp_norm(a: &[f64], p: f64) -> f64 {
    let mut acc = 0.0;
    for x in a {
        acc += abs_pow(*x, p);
    }
    if p == 1.0 {
        acc
    } else {
        powf(acc, 1.0 / p)
    }
}
