//! Symmetric `p`-stable laws, `1 ≤ p ≤ 2`, in the standard parameterization
//! with characteristic function `exp(-|t|^p)`.

mod law;
mod sampler;
mod transform;

pub use law::{density_direct, StableLaw};
pub use sampler::{draw_stable, StableSampler};
pub use transform::{
    abs_moment, constant_q, constant_qa, cosine_moment, transform_h, TransformConstants,
};

pub(crate) use transform::cosine_moment_unchecked;

use crate::error::{Error, Result};

pub(crate) fn check_index(p: f64) -> Result<()> {
    if (1.0..=2.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("stability index p = {p} outside [1, 2]")))
    }
}

/// Checks `1 ≤ q ≤ p ≤ 2`.
pub(crate) fn check_exponents(p: f64, q: f64) -> Result<()> {
    check_index(p)?;
    if (1.0..=p).contains(&q) {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("target exponent q = {q} outside [1, p = {p}]")))
    }
}

/// Density of the standard symmetric `p`-stable law at `x`, accurate to
/// about `1e-12` absolute.
pub fn density(p: f64, x: f64) -> Result<f64> {
    check_index(p)?;
    if x.is_nan() {
        return Err(Error::domain("density argument is NaN"));
    }
    let ax = x.abs();
    if ax >= law::TABLE_END {
        if ax.is_infinite() {
            return Ok(0.0);
        }
        // The series alone is cheap; no need for the table.
        let coeffs = law::series_coefficients(p);
        if let Some(v) = law::density_from_series(p, &coeffs, ax) {
            return Ok(v);
        }
    }
    Ok(density_direct(p, ax))
}

/// Distribution function of the standard symmetric `p`-stable law.
pub fn cdf(p: f64, x: f64) -> Result<f64> {
    Ok(StableLaw::new(p)?.cdf(x))
}
