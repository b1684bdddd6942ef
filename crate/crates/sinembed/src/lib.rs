//! Datasets, file formats, distortion reports and the command-line front end
//! for the `sinembed-core` embeddings.

pub mod cli;
pub mod dataset;
pub mod error;
pub mod io;
pub mod report;
pub mod solve;

pub use dataset::{generate_dataset, DatasetKind, DatasetSpec};
pub use error::{HarnessError, Result};
pub use report::{distortion_report, DistortionReport, EmbeddingSpec};
