//! The fused color + structure anomaly evaluation function.

use super::config::{ScoreConfig, ScoreFunction};
use super::gms::msgms;
use super::ssim::{l2_map, ssim_map_full};
use crate::error::{ensure_same_dims, Result};
use crate::imgcore::{box_filter, rgb_to_lab8, FloatMap, LabConstants, RgbImage};

/// Pixel anomaly map plus its image-level score (the map maximum).
#[derive(Clone, Debug, PartialEq)]
pub struct AnomalyMap {
    pub map: FloatMap,
    pub image_score: f64,
}

impl AnomalyMap {
    pub fn new(map: FloatMap) -> Self {
        let image_score = f64::from(map.max());
        Self { map, image_score }
    }
}

/// `1 - box(MSGMS, structure_kernel)`, in `[0, 1]`.
///
/// Exactly zero where the two images agree, and blind to flat regions of any
/// color because constant patches have no gradient.
pub fn structure_anomaly(img: &RgbImage, recon: &RgbImage, cfg: &ScoreConfig) -> Result<FloatMap> {
    let sim = box_filter(&msgms(img, recon, cfg)?, cfg.structure_kernel)?;
    Ok(sim.map(|s| (1.0 - s).max(0.0)))
}

/// Box-smoothed squared chroma distance on 8-bit Lab a/b channels.
///
/// Lightness is ignored, so pairs that differ only in L score zero. Range is
/// `[0, 2·255²]`; sums are taken in integers before filtering.
pub fn color_anomaly(img: &RgbImage, recon: &RgbImage, cfg: &ScoreConfig) -> Result<FloatMap> {
    ensure_same_dims(img.dims(), recon.dims())?;
    let consts = LabConstants::default();
    let a = rgb_to_lab8(img, &consts);
    let b = rgb_to_lab8(recon, &consts);
    let d = a
        .pixels()
        .zip(b.pixels())
        .map(|(p, q)| {
            let da = i32::from(q[1]) - i32::from(p[1]);
            let db = i32::from(q[2]) - i32::from(p[2]);
            (da * da + db * db) as f32
        })
        .collect();
    box_filter(&FloatMap::new(img.height(), img.width(), d)?, cfg.color_kernel)
}

/// `c · color + structure`; the image score is the maximum of the map.
pub fn anomaly_map(img: &RgbImage, recon: &RgbImage, cfg: &ScoreConfig) -> Result<AnomalyMap> {
    cfg.validate()?;
    let color = color_anomaly(img, recon, cfg)?;
    let structure = structure_anomaly(img, recon, cfg)?;
    let c = cfg.c;
    let fused = color.zip_with(&structure, |col, st| (c * f64::from(col) + f64::from(st)) as f32)?;
    Ok(AnomalyMap::new(fused))
}

/// Scores a pair with the evaluation function selected by `cfg.function`.
pub fn score_pair(img: &RgbImage, recon: &RgbImage, cfg: &ScoreConfig) -> Result<AnomalyMap> {
    cfg.validate()?;
    let map = match cfg.function {
        ScoreFunction::Fused => return anomaly_map(img, recon, cfg),
        ScoreFunction::Msgms => structure_anomaly(img, recon, cfg)?,
        ScoreFunction::Color => color_anomaly(img, recon, cfg)?,
        ScoreFunction::L2 => l2_map(img, recon)?,
        ScoreFunction::Ssim => ssim_map_full(img, recon, 11, 1.5)?.map(|s| 1.0 - s),
    };
    Ok(AnomalyMap::new(map))
}
