//! Stress-model graph layout with adjustable distance matrices.
//!
//! Two ways of changing the ideal distances before (or while) laying out a
//! graph are provided: spectral low-rank truncation of the classical-MDS
//! Gram matrix, and a distance-adjusted stress model that relaxes each
//! target distance toward the current drawing. Both plug into stochastic
//! gradient descent over all pairs or over a pivot-based sparse pair set.
//! The [`metrics`] module scores drawings and [`harness`] runs multi-seed
//! sweeps.

pub mod error;
pub mod graph;
pub mod harness;
pub mod layout;
pub mod metrics;
pub mod spectral;

pub use error::{Error, Result};
