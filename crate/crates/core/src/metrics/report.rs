use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pro::aupro;
use super::ranking::{auroc, average_precision, ScoredSet};
use crate::error::{ensure_same_dims, Error, Result};
use crate::imgcore::FloatMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub category: String,
    pub image_auroc: f64,
    pub pixel_auroc: f64,
    pub pixel_ap: f64,
    pub aupro: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricMeans {
    pub image_auroc: f64,
    pub pixel_auroc: f64,
    pub pixel_ap: f64,
    pub aupro: f64,
}

/// Provenance recorded with every report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub config_hash: String,
    pub seed: u64,
    pub dataset: String,
    /// Evaluation conventions in force (pooling, resize policy, ...).
    pub notes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub categories: Vec<CategoryReport>,
    pub mean: MetricMeans,
    pub metadata: RunMetadata,
}

impl EvalReport {
    /// Aggregates are arithmetic means over categories.
    pub fn new(categories: Vec<CategoryReport>, metadata: RunMetadata) -> Self {
        let n = categories.len().max(1) as f64;
        let mean = |f: fn(&CategoryReport) -> f64| categories.iter().map(f).sum::<f64>() / n;
        let mean = MetricMeans {
            image_auroc: mean(|c| c.image_auroc),
            pixel_auroc: mean(|c| c.pixel_auroc),
            pixel_ap: mean(|c| c.pixel_ap),
            aupro: mean(|c| c.aupro),
        };
        Self {
            categories,
            mean,
            metadata,
        }
    }
}

/// Inputs for one category, aligned by sample.
pub struct CategoryInputs<'a> {
    pub category: &'a str,
    pub anomaly_maps: &'a [FloatMap],
    pub image_scores: &'a [f64],
    /// All-zero for normal samples.
    pub gt_masks: &'a [FloatMap],
    pub image_labels: &'a [bool],
    pub fpr_limit: f64,
}

/// Image AUROC, pooled pixel AUROC and AP, and AUPRO for one category.
///
/// Every metric is attempted; if some are degenerate the error lists each
/// failing metric.
pub fn evaluate_category(inputs: &CategoryInputs<'_>) -> Result<CategoryReport> {
    let n = inputs.anomaly_maps.len();
    if inputs.image_scores.len() != n || inputs.gt_masks.len() != n || inputs.image_labels.len() != n {
        return Err(Error::param("inputs", "maps, scores, masks and labels must be aligned"));
    }
    let mut pixels = ScoredSet::default();
    for (i, (map, gt)) in inputs.anomaly_maps.iter().zip(inputs.gt_masks).enumerate() {
        ensure_same_dims(gt.dims(), map.dims()).map_err(|e| Error::param("gt_masks", format!("sample {i}: {e}")))?;
        for (&s, &g) in map.as_raw().iter().zip(gt.as_raw()) {
            pixels.push(f64::from(s), g > 0.0);
        }
    }
    let images = ScoredSet::new(inputs.image_scores.to_vec(), inputs.image_labels.to_vec())?;

    let mut failures = Vec::new();
    let mut take = |name: &str, r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            failures.push(format!("{name}: {e}"));
            f64::NAN
        }
    };
    let report = CategoryReport {
        category: inputs.category.to_string(),
        image_auroc: take("image_auroc", auroc(&images)),
        pixel_auroc: take("pixel_auroc", auroc(&pixels)),
        pixel_ap: take("pixel_ap", average_precision(&pixels)),
        aupro: take("aupro", aupro(inputs.anomaly_maps, inputs.gt_masks, inputs.fpr_limit)),
    };
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Error::Degenerate(format!("category {}: {}", inputs.category, failures.join("; "))))
    }
}
