//! Anomaly evaluation: CIELAB chroma difference, multi-scale gradient
//! magnitude similarity, their fusion, and SSIM / l2 reconstruction measures.

mod anomaly;
mod config;
mod gms;
mod ssim;

pub use anomaly::{anomaly_map, color_anomaly, score_pair, structure_anomaly, AnomalyMap};
pub use config::{ScoreConfig, ScoreFunction};
pub use gms::{gms, gms_value, gradient_magnitude, msgms};
pub use ssim::{l2_map, ssim_index, ssim_map_full, SSIM_C1, SSIM_C2};
