use std::path::Path;

use edgerec::dataset::{
    load_test_sample, match_reconstructions, verify_reconstruction_dims, write_float_map, write_heatmap,
    write_scores, RunConfig, RunPaths, ScoreRow, SCORES_CSV,
};
use edgerec::score::score_pair;
use edgerec::Result;
use rayon::prelude::*;

use super::eval::evaluate_into;
use super::{emit_config, pool, scan};
use crate::args::{RunArgs, ScoreArgs};
use crate::config::merged_config;

fn paths(args: &ScoreArgs) -> RunPaths {
    RunPaths {
        dataset: Some(args.data.dataset.clone()),
        recon: Some(args.recon.clone()),
        out: Some(args.out.clone()),
        maps: Some(args.out.join("maps")),
        ..RunPaths::default()
    }
}

/// Writes `maps/<defect>/<stem>.pfm`, `heatmaps/<defect>/<stem>.png` and
/// `scores.csv`. Every protocol check runs before any scoring.
fn score_into(args: &ScoreArgs, cfg: &RunConfig, out: &Path) -> Result<()> {
    let index = scan(&args.data)?;
    let matched = match_reconstructions(&index, &args.recon)?;
    verify_reconstruction_dims(&matched.index, cfg.resize)?;
    let hash = cfg.config_hash();
    let test: Vec<_> = matched.index.test().collect();
    let pool = pool(args.cfg.jobs)?;
    let rows: Vec<ScoreRow> = pool.install(|| {
        test.par_iter()
            .map(|rec| {
                let (img, recon, _) = load_test_sample(rec, cfg.resize)?;
                let m = score_pair(&img, &recon, &cfg.score)?;
                let rel = Path::new(&rec.defect_kind).join(&rec.stem);
                write_float_map(&m.map, &out.join("maps").join(&rel).with_extension("pfm"))?;
                write_heatmap(&m.map, &out.join("heatmaps").join(&rel).with_extension("png"), cfg.heatmap, Some(&hash))?;
                Ok(ScoreRow {
                    stem: rec.stem.clone(),
                    defect_kind: rec.defect_kind.clone(),
                    image_score: m.image_score,
                })
            })
            .collect::<Result<_>>()
    })?;
    log::info!("scored {} test images", rows.len());
    write_scores(&rows, &out.join(SCORES_CSV))
}

pub fn score(args: &ScoreArgs) -> Result<()> {
    let cfg = merged_config(&args.cfg, paths(args))?;
    score_into(args, &cfg, &args.out)?;
    emit_config(&cfg, &args.out)
}

pub fn run(args: &RunArgs) -> Result<()> {
    let cfg = merged_config(&args.cfg, paths(args))?;
    score_into(args, &cfg, &args.out)?;
    evaluate_into(&args.data, &args.out.join("maps"), &cfg, &args.out, args.cfg.jobs)?;
    emit_config(&cfg, &args.out)
}
