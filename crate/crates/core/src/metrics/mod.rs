//! Detection and localization metrics.
//!
//! Image-level AUROC over image scores, pixel-level AUROC and average
//! precision over pooled pixels, and AUPRO (per-region overlap integrated up
//! to a false-positive-rate limit, 0.3 by convention).

mod pro;
mod ranking;
mod regions;
mod report;

pub use pro::{aupro, pro_curve, ProCurve, EXHAUSTIVE_LIMIT, QUANTIZED_THRESHOLDS};
pub use ranking::{auroc, average_precision, ScoredSet};
pub use regions::{connected_components, Components};
pub use report::{evaluate_category, CategoryInputs, CategoryReport, EvalReport, MetricMeans, RunMetadata};

/// Default upper FPR bound for AUPRO.
pub const DEFAULT_FPR_LIMIT: f64 = 0.3;
