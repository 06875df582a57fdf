//! Reconstruction-based surface anomaly detection toolkit.
//!
//! The pipeline removes color and low-frequency content from an image by
//! reducing it to a morphological grayscale edge, lets an external model
//! restore the RGB image, and scores the restoration with a fused CIELAB
//! chroma difference and multi-scale gradient magnitude similarity.
//!
//! * [`imgcore`]: raster types, color conversion, morphology, filters.
//! * [`edge`]: grayscale edge extraction.
//! * [`synth`]: Perlin/texture and CutPaste pseudo-anomalies, training pairs.
//! * [`score`]: the anomaly evaluation function and reconstruction measures.
//! * [`metrics`]: AUROC, AP, AUPRO and per-category reports.
//! * [`dataset`]: MVTec-style dataset trees, the reconstruction protocol and
//!   on-disk artifacts (behind the default `io` feature).

pub mod edge;
pub mod error;
pub mod imgcore;
pub mod metrics;
pub mod score;
pub mod synth;

#[cfg(feature = "io")]
pub mod dataset;

pub use error::{Error, ErrorKind, Result};
