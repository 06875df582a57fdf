mod common;

use common::*;
use edgerec::imgcore::FloatMap;
use edgerec::metrics::{evaluate_category, CategoryInputs};

/// Eight 12x12 maps: four normal, four defective with hand-placed regions and
/// partially overlapping responses.
fn fixture() -> (Vec<FloatMap>, Vec<FloatMap>, Vec<bool>) {
    let mut maps = Vec::new();
    let mut gts = Vec::new();
    let mut labels = Vec::new();
    for i in 0..8usize {
        let defect = i >= 4;
        let gt = FloatMap::from_fn(12, 12, |y, x| {
            if defect && (i..i + 4).contains(&y) && (2..6).contains(&x) { 1.0 } else { 0.0 }
        });
        let map = FloatMap::from_fn(12, 12, |y, x| {
            let base = ((y * 7 + x * 3 + i * 5) % 11) as f32 / 20.0;
            let hit = if defect && (i + 1..i + 5).contains(&y) && (2..6).contains(&x) { 0.4 } else { 0.0 };
            base + hit
        });
        maps.push(map);
        gts.push(gt);
        labels.push(defect);
    }
    (maps, gts, labels)
}

#[test]
fn report_matches_reference_implementations() {
    let (maps, gts, labels) = fixture();
    let scores: Vec<f64> = maps.iter().map(|m| f64::from(m.max())).collect();
    let r = evaluate_category(&CategoryInputs {
        category: "golden",
        anomaly_maps: &maps,
        image_scores: &scores,
        gt_masks: &gts,
        image_labels: &labels,
        fpr_limit: 0.3,
    })
    .unwrap();
    let px: Vec<f64> = maps.iter().flat_map(|m| m.as_raw().iter().map(|&v| f64::from(v))).collect();
    let pl: Vec<bool> = gts.iter().flat_map(|g| g.as_raw().iter().map(|&v| v > 0.0)).collect();
    assert!((r.image_auroc - brute_auroc(&scores, &labels)).abs() < 1e-9);
    assert!((r.pixel_auroc - brute_auroc(&px, &pl)).abs() < 1e-9);
    assert!((r.pixel_ap - brute_ap(&px, &pl)).abs() < 1e-9);
    assert!((r.aupro - brute_aupro(&maps, &gts, 0.3)).abs() < 1e-3);
    assert!(r.image_auroc > 0.5 && r.pixel_auroc > 0.5);
}
