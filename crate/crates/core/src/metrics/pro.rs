//! Per-region overlap (PRO) curve and its normalized area up to an FPR limit.

use super::regions::connected_components;
use crate::error::{ensure_same_dims, Error, Result};
use crate::imgcore::FloatMap;

/// Up to this many distinct pooled scores, every one is a threshold.
pub const EXHAUSTIVE_LIMIT: usize = 10_000;
/// Quantile-spaced thresholds used above [`EXHAUSTIVE_LIMIT`].
pub const QUANTIZED_THRESHOLDS: usize = 2_048;

/// PRO against pooled FPR, ordered by decreasing threshold (increasing FPR),
/// starting at the empty detection `(0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProCurve {
    pub fpr: Vec<f64>,
    pub pro: Vec<f64>,
}

impl ProCurve {
    /// Trapezoidal area on `[0, limit]`, interpolating the endpoint, divided
    /// by `limit`.
    pub fn normalized_area(&self, limit: f64) -> f64 {
        let mut area = 0.0;
        for i in 1..self.fpr.len() {
            let (x0, y0) = (self.fpr[i - 1], self.pro[i - 1]);
            let (x1, y1) = (self.fpr[i], self.pro[i]);
            if x0 >= limit {
                break;
            }
            if x1 > limit {
                let y = y0 + (y1 - y0) * (limit - x0) / (x1 - x0);
                area += (limit - x0) * (y0 + y) / 2.0;
                break;
            }
            area += (x1 - x0) * (y0 + y1) / 2.0;
        }
        area / limit
    }
}

/// Sweeps thresholds over the pooled scores of all maps. A pixel counts as
/// detected when its score is `>=` the threshold. Negatives are pooled over
/// all images; PRO averages over every ground-truth region of every image.
pub fn pro_curve(maps: &[FloatMap], gts: &[FloatMap]) -> Result<ProCurve> {
    if maps.is_empty() {
        return Err(Error::param("maps", "no maps to evaluate"));
    }
    if maps.len() != gts.len() {
        return Err(Error::param(
            "gts",
            format!("{} maps but {} ground-truth masks", maps.len(), gts.len()),
        ));
    }

    // (score, region id); id 0 marks a negative pixel.
    let mut pixels: Vec<(f32, u32)> = Vec::with_capacity(maps.iter().map(FloatMap::len).sum());
    let mut inv_area: Vec<f64> = vec![0.0];
    for (map, gt) in maps.iter().zip(gts) {
        ensure_same_dims(gt.dims(), map.dims())?;
        if !map.is_finite() {
            return Err(Error::param("maps", "anomaly map contains non-finite values"));
        }
        let cc = connected_components(gt);
        let offset = (inv_area.len() - 1) as u32;
        inv_area.extend(cc.areas().into_iter().map(|a| 1.0 / a as f64));
        for (&s, &l) in map.as_raw().iter().zip(&cc.labels) {
            pixels.push((s, if l == 0 { 0 } else { l + offset }));
        }
    }
    let regions = inv_area.len() - 1;
    if regions == 0 {
        return Err(Error::Degenerate("AUPRO needs at least one ground-truth region".into()));
    }
    let negatives = pixels.iter().filter(|p| p.1 == 0).count();
    if negatives == 0 {
        return Err(Error::Degenerate("AUPRO needs at least one negative pixel".into()));
    }

    pixels.sort_by(|a, b| b.0.total_cmp(&a.0));
    let n = pixels.len();
    let mut group_ends = Vec::new();
    for i in 1..=n {
        if i == n || pixels[i].0 != pixels[i - 1].0 {
            group_ends.push(i);
        }
    }
    let quantiles: Option<Vec<usize>> = (group_ends.len() > EXHAUSTIVE_LIMIT).then(|| {
        (0..QUANTIZED_THRESHOLDS)
            .map(|j| ((j as f64) * (n - 1) as f64 / (QUANTIZED_THRESHOLDS - 1) as f64).round() as usize)
            .collect()
    });

    let mut curve = ProCurve {
        fpr: vec![0.0],
        pro: vec![0.0],
    };
    let (mut fp, mut overlap) = (0usize, 0.0f64);
    let mut start = 0;
    let mut q = 0;
    for end in group_ends {
        for &(_, region) in &pixels[start..end] {
            if region == 0 {
                fp += 1;
            } else {
                overlap += inv_area[region as usize];
            }
        }
        let record = match &quantiles {
            None => true,
            Some(qs) => {
                let mut hit = false;
                while q < qs.len() && qs[q] < end {
                    hit = true;
                    q += 1;
                }
                hit
            }
        };
        if record {
            curve.fpr.push(fp as f64 / negatives as f64);
            curve.pro.push((overlap / regions as f64).min(1.0));
        }
        start = end;
    }
    Ok(curve)
}

/// Normalized area under the PRO curve for FPR in `[0, fpr_limit]`.
pub fn aupro(maps: &[FloatMap], gts: &[FloatMap], fpr_limit: f64) -> Result<f64> {
    if !(fpr_limit > 0.0 && fpr_limit <= 1.0) {
        return Err(Error::param("fpr_limit", format!("must lie in (0, 1], got {fpr_limit}")));
    }
    Ok(pro_curve(maps, gts)?.normalized_area(fpr_limit))
}
