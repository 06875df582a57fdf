use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::blend::{blend_anomaly, TextureBank};
use super::config::CorruptionConfig;
use super::cutpaste::{cutpaste, uniform};
use super::perlin::{perlin_mask, perlin_noise};
use crate::edge::edge_pipeline;
use crate::error::{Error, Result};
use crate::imgcore::{resize_bilinear, FloatMap, GrayImage, RgbImage};

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for work item `index` of a run; independent of scheduling order.
pub fn derive_seed(run_seed: u64, index: u64) -> u64 {
    splitmix64(run_seed ^ splitmix64(index))
}

// Sub-stream tags within one corruption.
const STREAM_GATES: u64 = 0;
const STREAM_TEXTURE: u64 = 1;
const STREAM_CUTPASTE: u64 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct CorruptionOutcome {
    pub corrupted: RgbImage,
    pub mask: FloatMap,
    pub applied_texture: bool,
    pub applied_cutpaste: bool,
}

/// Corrupted edge input, clean target and corruption mask.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingPair {
    pub edge_input: GrayImage,
    pub target: RgbImage,
    pub mask: FloatMap,
}

fn texture_blend(img: &RgbImage, bank: &TextureBank, cfg: &CorruptionConfig, seed: u64) -> Result<(RgbImage, FloatMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h, w) = img.dims();
    let (_, texture) = bank
        .get(rng.random_range(0..bank.len()))
        .expect("index drawn within bank");
    let exps = &cfg.perlin_scale_exponents;
    let kx = exps[rng.random_range(0..exps.len())];
    let ky = exps[rng.random_range(0..exps.len())];
    let noise_seed = rng.random::<u64>();
    let beta = uniform(&mut rng, cfg.beta_range);

    let field = perlin_noise(h, w, 1 << kx, 1 << ky, noise_seed)?;
    let mask = perlin_mask(&field, cfg.perlin_threshold)?;
    let texture = resize_bilinear(texture, h, w)?;
    Ok((blend_anomaly(img, &texture, &mask, beta)?, mask))
}

/// Applies texture blending and/or CutPaste behind two independent gates.
pub fn corrupt(img: &RgbImage, bank: &TextureBank, cfg: &CorruptionConfig, seed: u64) -> Result<CorruptionOutcome> {
    cfg.validate()?;
    if cfg.p_texture > 0.0 && bank.is_empty() {
        return Err(Error::param("textures", "texture corruption enabled but the texture bank is empty"));
    }
    let mut gates = ChaCha8Rng::seed_from_u64(derive_seed(seed, STREAM_GATES));
    let applied_texture = gates.random::<f64>() < cfg.p_texture;
    let applied_cutpaste = gates.random::<f64>() < cfg.p_cutpaste;

    let (h, w) = img.dims();
    let mut corrupted = img.clone();
    let mut mask = FloatMap::zeros(h, w);
    if applied_texture {
        let (out, m) = texture_blend(&corrupted, bank, cfg, derive_seed(seed, STREAM_TEXTURE))?;
        corrupted = out;
        mask = m;
    }
    if applied_cutpaste {
        let cp = cutpaste(&corrupted, cfg, derive_seed(seed, STREAM_CUTPASTE))?;
        corrupted = cp.image;
        mask = mask.zip_with(&cp.mask, f32::max)?;
    }
    Ok(CorruptionOutcome {
        corrupted,
        mask,
        applied_texture,
        applied_cutpaste,
    })
}

/// Corrupts `img`, then reduces the corrupted image to its grayscale edge.
/// The target is the untouched input.
pub fn training_pair(img: &RgbImage, bank: &TextureBank, cfg: &CorruptionConfig, seed: u64) -> Result<TrainingPair> {
    let outcome = corrupt(img, bank, cfg, seed)?;
    Ok(TrainingPair {
        edge_input: edge_pipeline(&outcome.corrupted),
        target: img.clone(),
        mask: outcome.mask,
    })
}
