//! Sine-dampened stable projections: bounded-range and snowflake embeddings
//! of `ℓ_p` into `ℓ_q`, plus the metric tooling they rely on.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod kcenter;
pub mod math;
pub mod metric;
pub mod points;
pub mod quad;
pub mod range;
pub mod rng;
pub mod snowflake;
pub mod stable;
pub mod threshold;

pub use error::{Error, Result};
pub use points::{DistanceMatrix, PointSet};
pub use range::{Method, Normalization, RangeEmbedding, RangeParams};
pub use stable::{StableLaw, StableSampler, TransformConstants};
pub use threshold::ThresholdEmbedding;
