use super::law::StableLaw;
use super::{check_exponents, check_index};
use crate::error::{Error, Result};
use crate::math::{self, CompensatedSum};
use crate::quad::{self, Tolerance};

/// `E|cos θ|^r` for uniform `θ`, i.e. `Γ((r+1)/2) / (√π Γ(r/2+1))`.
pub(crate) fn cosine_moment_unchecked(r: f64) -> f64 {
    math::exp(math::ln_gamma(0.5 * (r + 1.0)) - math::ln_gamma(0.5 * r + 1.0)) / math::sqrt(math::PI)
}

/// `P_q = E|cos θ|^q` for `θ` uniform on `[0, 2π)`.
pub fn cosine_moment(q: f64) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::domain("cosine moment needs q >= 1"));
    }
    Ok(cosine_moment_unchecked(q))
}

const MIN_PERIODS: f64 = 64.0;
const MAX_PERIODS: f64 = 20_000.0;
const MIN_RANGE: f64 = 200.0;
/// Above this value of `(2a)^p` the damped cosine series converges in a few
/// dozen terms and replaces the quadrature.
const SERIES_DAMPING: f64 = 0.5;
/// Terms with damping beyond this are below double precision.
const SERIES_CUTOFF: f64 = 60.0;

impl StableLaw {
    /// `E|g|^q` for `0 < q < p`.
    pub fn abs_moment(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return Err(Error::domain("moment order must be positive"));
        }
        if q >= self.p() {
            return Err(Error::Divergent(alloc::format!(
                "E|g|^{q} is infinite for a {}-stable law: the density tail decays like x^-(p+1)",
                self.p()
            )));
        }
        Ok(self.abs_moment_unchecked(q))
    }

    /// `E|sin(a g)|^r` for any `r > 0` and `a ≥ 0`.
    ///
    /// Uses [`Self::sine_moment_series`] when `(2a)^p ≥ 1/2` and
    /// [`Self::sine_moment_quadrature`] below.
    pub fn sine_moment(&self, r: f64, a: f64) -> f64 {
        let a = a.abs();
        if math::powf(2.0 * a, self.p()) >= SERIES_DAMPING {
            self.sine_moment_series(r, a)
        } else {
            self.sine_moment_quadrature(r, a)
        }
    }

    /// `E|sin(a g)|^r` from `|sin θ|^r = d_0 + 2 Σ_k d_k cos(2kθ)` and
    /// `E cos(2k a g) = exp(-(2ka)^p)`.
    pub fn sine_moment_series(&self, r: f64, a: f64) -> f64 {
        let a = a.abs();
        let d0 = cosine_moment_unchecked(r);
        let mut d = d0;
        let mut acc = CompensatedSum::new();
        let mut k = 1.0;
        loop {
            let damp = math::powf(2.0 * k * a, self.p());
            if damp > SERIES_CUTOFF || d == 0.0 && k > 1.0 + 0.5 * r {
                break;
            }
            d *= (k - 1.0 - 0.5 * r) / (k + 0.5 * r);
            acc.add(d * math::exp(-damp));
            k += 1.0;
        }
        d0 + 2.0 * acc.value()
    }

    /// `E|sin(a g)|^r` by direct quadrature against the density.
    ///
    /// Integrates `2|sin(au)|^r h(u)` panel by panel between the zeros of the
    /// sine; once the panels are short against the variation of `h`, the
    /// remaining mass is weighted by the mean `E|cos θ|^r`.
    pub fn sine_moment_quadrature(&self, r: f64, a: f64) -> f64 {
        if a == 0.0 {
            return 0.0;
        }
        let a = a.abs();
        let width = math::PI / a;
        let periods = math::ceil((MIN_RANGE / width).max(MIN_PERIODS)).min(MAX_PERIODS);
        let end = periods * width;
        let tol = Tolerance { abs: 1e-16, rel: 1e-10, max_panels: 200 };
        let integrand = |u: f64| math::abs_pow(math::sin(a * u), r) * self.density(u);
        let mut acc = CompensatedSum::new();
        // Panel edges: the zeros of the sine merged with a geometric ladder
        // that resolves the bulk of the density when periods are wide.
        let mut lo = 0.0;
        let mut next_zero = width;
        let mut next_rung = 0.5;
        while lo < end {
            let hi = next_zero.min(next_rung).min(end);
            acc.add(quad::integrate(integrand, lo, hi, tol).0);
            if hi >= next_zero {
                next_zero += width;
            }
            if hi >= next_rung {
                next_rung *= 2.0;
            }
            lo = hi;
        }
        acc.add(cosine_moment_unchecked(r) * self.upper_tail(end));
        2.0 * acc.value()
    }

    /// `H(a) = E|sin(a g)|^q` for `1 ≤ q ≤ p`.
    pub fn transform_h(&self, q: f64, a: f64) -> Result<f64> {
        check_exponents(self.p(), q)?;
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::domain("transform argument must be finite and nonnegative"));
        }
        Ok(self.sine_moment(q, a).min(1.0))
    }

    /// `½∫₀^{√ε/a} u^p h(u) du`.
    pub fn constant_qa(&self, a: f64, eps: f64) -> Result<f64> {
        check_qa_domain(a, eps)?;
        Ok(0.5 * self.truncated_moment(self.p(), math::sqrt(eps) / a))
    }
}

fn check_qa_domain(a: f64, eps: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain("Q_a needs 0 < a < 1"));
    }
    if !(eps < 1.0) || !(eps > a * a) {
        return Err(Error::domain("Q_a needs a^2 < eps < 1"));
    }
    Ok(())
}

/// The constants attached to a pair of indices `(p, q)`.
#[derive(Clone, Debug)]
pub struct TransformConstants {
    pub p: f64,
    pub q: f64,
    /// `E|cos θ|^q`.
    pub p_q: f64,
    /// `E|g|^q`; absent when `q = p`.
    pub q_moment: Option<f64>,
    /// Lower and upper envelope constants with
    /// `c ≤ h(x)(1 + x^{p+1}) ≤ c'` on `[0, 100]`.
    pub envelope: (f64, f64),
    law: StableLaw,
}

impl TransformConstants {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        check_exponents(p, q)?;
        let law = StableLaw::new(p)?;
        Ok(Self::with_law(law, q))
    }

    pub(crate) fn with_law(law: StableLaw, q: f64) -> Self {
        let p = law.p();
        let q_moment = if q < p { Some(law.abs_moment_unchecked(q)) } else { None };
        let envelope = fit_envelope(&law);
        TransformConstants { p, q, p_q: cosine_moment_unchecked(q), q_moment, envelope, law }
    }

    pub fn law(&self) -> &StableLaw {
        &self.law
    }

    /// `Q_a` as in [`StableLaw::constant_qa`].
    pub fn qa(&self, a: f64, eps: f64) -> Result<f64> {
        self.law.constant_qa(a, eps)
    }

    /// `H(a)` for this `q`.
    pub fn h(&self, a: f64) -> f64 {
        self.law.sine_moment(self.q, a).min(1.0)
    }
}

/// Range of `h(x)(1 + x^{p+1})` over a log grid of `[0, 100]`.
pub(crate) fn fit_envelope(law: &StableLaw) -> (f64, f64) {
    let p = law.p();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut visit = |x: f64| {
        let v = law.density(x) * (1.0 + math::powf(x, p + 1.0));
        lo = lo.min(v);
        hi = hi.max(v);
    };
    visit(0.0);
    for i in 0..=120 {
        visit(math::powf(10.0, -4.0 + 6.0 * i as f64 / 120.0));
    }
    (lo, hi)
}

/// Free-standing convenience wrappers that build a law per call.
pub fn abs_moment(p: f64, q: f64) -> Result<f64> {
    StableLaw::new(p)?.abs_moment(q)
}

pub fn transform_h(p: f64, q: f64, a: f64) -> Result<f64> {
    check_exponents(p, q)?;
    StableLaw::new(p)?.transform_h(q, a)
}

/// `Q = E|g|^q`; only defined for `q < p`.
pub fn constant_q(p: f64, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::domain("Q needs q >= 1"));
    }
    abs_moment(p, q)
}

pub fn constant_qa(p: f64, a: f64, eps: f64) -> Result<f64> {
    check_index(p)?;
    check_qa_domain(a, eps)?;
    StableLaw::new(p)?.constant_qa(a, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_agrees_with_quadrature() {
        for p in [1.0, 1.3, 1.7, 2.0] {
            let law = StableLaw::new(p).unwrap();
            for r in [1.0, 1.5, 2.0, 3.0] {
                for a in [0.3, 0.6, 1.0, 2.0, 5.0] {
                    let s = law.sine_moment_series(r, a);
                    let d = law.sine_moment_quadrature(r, a);
                    assert!((s - d).abs() <= 1e-7 * d, "p={p} r={r} a={a}: {s} vs {d}");
                }
            }
        }
    }

    #[test]
    fn cosine_moment_values() {
        assert!((cosine_moment(2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((cosine_moment(1.0).unwrap() - 2.0 / math::PI).abs() < 1e-15);
        assert!(cosine_moment(0.5).is_err());
        // Independent check by quadrature over one quarter period.
        let tol = Tolerance::default();
        let (v, _) = quad::integrate(|t| math::powf(math::cos(t), 1.5), 0.0, math::FRAC_PI_2, tol);
        assert!((cosine_moment(1.5).unwrap() - v / math::FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let law = StableLaw::new(2.0).unwrap();
        for a in [0.01, 0.1, 0.5, 1.0, 3.0, 40.0] {
            let exact = 0.5 * (1.0 - math::exp(-4.0 * a * a));
            let got = law.transform_h(2.0, a).unwrap();
            assert!((got - exact).abs() <= 1e-8 * exact, "a={a}: {got} vs {exact}");
        }
        assert_eq!(law.transform_h(2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_divergent_moment() {
        let law = StableLaw::new(1.5).unwrap();
        assert!(matches!(law.abs_moment(1.5), Err(Error::Divergent(_))));
        assert!(law.abs_moment(1.4).is_ok());
        assert!(constant_q(2.0, 2.0).is_err());
    }

    #[test]
    fn qa_domain() {
        let law = StableLaw::new(1.0).unwrap();
        assert!(law.constant_qa(0.5, 0.25).is_err());
        assert!(law.constant_qa(0.1, 1.0).is_err());
        assert!(law.constant_qa(0.0, 0.5).is_err());
        let small = law.constant_qa(0.01, 0.25).unwrap();
        let large = law.constant_qa(0.1, 0.25).unwrap();
        assert!(small > large);
    }
}
