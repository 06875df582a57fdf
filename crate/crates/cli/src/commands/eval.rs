use std::path::Path;

use edgerec::dataset::{load_mask, read_float_map, write_report, RunConfig, RunPaths};
use edgerec::imgcore::FloatMap;
use edgerec::metrics::{evaluate_category, CategoryInputs, EvalReport, RunMetadata};
use edgerec::{Error, Result};
use rayon::prelude::*;

use super::{emit_config, pool, scan};
use crate::args::{DatasetArgs, EvalArgs};
use crate::config::merged_config;

/// Reads one map per test sample, scores images by map maximum, and writes
/// `report.json` and `report.csv` into `out`.
pub(super) fn evaluate_into(
    data: &DatasetArgs,
    maps_dir: &Path,
    cfg: &RunConfig,
    out: &Path,
    jobs: Option<usize>,
) -> Result<()> {
    let index = scan(data)?;
    let test: Vec<_> = index.test().collect();
    let map_paths: Vec<_> = test
        .iter()
        .map(|r| maps_dir.join(&r.defect_kind).join(format!("{}.pfm", r.stem)))
        .collect();
    let missing: Vec<String> = test
        .iter()
        .zip(&map_paths)
        .filter(|(_, p)| !p.is_file())
        .map(|(r, _)| r.key())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Protocol(format!(
            "{} anomaly map(s) missing under {}: {}",
            missing.len(),
            maps_dir.display(),
            missing.join(", ")
        )));
    }
    let pool = pool(jobs)?;
    let loaded: Vec<(FloatMap, FloatMap)> = pool.install(|| {
        test.par_iter()
            .zip(&map_paths)
            .map(|(rec, p)| {
                let map = read_float_map(p)?;
                let gt = match &rec.mask_path {
                    Some(m) => load_mask(m, Some(map.dims()))?,
                    None => FloatMap::zeros(map.height(), map.width()),
                };
                Ok((map, gt))
            })
            .collect::<Result<_>>()
    })?;
    let (maps, gts): (Vec<_>, Vec<_>) = loaded.into_iter().unzip();
    let scores: Vec<f64> = maps.iter().map(|m| f64::from(m.max())).collect();
    let labels: Vec<bool> = test.iter().map(|r| r.is_anomalous()).collect();
    let row = evaluate_category(&CategoryInputs {
        category: &index.category,
        anomaly_maps: &maps,
        image_scores: &scores,
        gt_masks: &gts,
        image_labels: &labels,
        fpr_limit: cfg.fpr_limit,
    })?;
    log::info!(
        "{}: image AUROC {:.4}, pixel AUROC {:.4}, pixel AP {:.4}, AUPRO {:.4}",
        row.category,
        row.image_auroc,
        row.pixel_auroc,
        row.pixel_ap,
        row.aupro
    );
    let meta = RunMetadata {
        config_hash: cfg.config_hash(),
        seed: cfg.seed,
        dataset: index.id(),
        notes: cfg.notes(),
    };
    write_report(&EvalReport::new(vec![row], meta), out)
}

pub fn eval(args: &EvalArgs) -> Result<()> {
    let cfg = merged_config(
        &args.cfg,
        RunPaths {
            dataset: Some(args.data.dataset.clone()),
            maps: Some(args.maps.clone()),
            out: Some(args.out.clone()),
            ..RunPaths::default()
        },
    )?;
    evaluate_into(&args.data, &args.maps, &cfg, &args.out, args.cfg.jobs)?;
    emit_config(&cfg, &args.out)
}
