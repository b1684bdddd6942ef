//! Metric tooling over a finite point set: nets, net hierarchies,
//! doubling-dimension estimates, padded decompositions and the
//! partition-wise embedding built on them.

mod ddim;
mod hierarchy;
mod intrinsic;
mod net;
mod padded;

pub use ddim::{estimate_doubling_dimension, greedy_half_cover};
pub use hierarchy::{build_hierarchy, Hierarchy};
pub use intrinsic::{intrinsic_embedding, IntrinsicConfig, IntrinsicEmbedding};
pub use net::{build_net, greedy_net, Net};
pub use padded::{padded_decomposition, padded_decomposition_with, PaddedPartitionFamily, PaddingConfig};
