use std::fs;
use std::path::PathBuf;

use edgerec::dataset::{load_image, load_texture_bank, save_gray, save_mask, save_rgb, RunPaths};
use edgerec::imgcore::rotate_bilinear;
use edgerec::synth::{derive_seed, training_pair, TextureBank};
use edgerec::{Error, Result};
use rayon::prelude::*;

use super::{emit_config, pool, scan};
use crate::args::SynthArgs;
use crate::config::merged_config;

// Seed stream for the rotation angle; corruption uses tags 0..=2.
const STREAM_ROTATION: u64 = 3;

pub fn synth(args: &SynthArgs) -> Result<()> {
    let cfg = merged_config(
        &args.cfg,
        RunPaths {
            dataset: Some(args.data.dataset.clone()),
            textures: args.textures.clone(),
            out: Some(args.out.clone()),
            ..RunPaths::default()
        },
    )?;
    let index = scan(&args.data)?;
    let sources: Vec<PathBuf> = index.train().map(|s| s.image_path.clone()).collect();
    let bank = match &args.textures {
        Some(dir) => load_texture_bank(dir, Some(cfg.resize))?,
        None => TextureBank::empty(),
    };
    if cfg.corruption.p_texture > 0.0 && bank.is_empty() {
        return Err(Error::param("textures", "texture blending is enabled but no textures were given"));
    }
    let dirs = ["edge", "target", "mask"].map(|d| args.out.join(d));
    for d in &dirs {
        fs::create_dir_all(d).map_err(|e| Error::io(d, e))?;
    }
    let pool = pool(args.cfg.jobs)?;
    let result = pool.install(|| {
        (0..args.count).into_par_iter().try_for_each(|i| {
            let mut img = load_image(&sources[i % sources.len()], Some(cfg.resize))?;
            let seed = derive_seed(cfg.seed, i as u64);
            if let Some((lo, hi)) = cfg.rotate {
                let unit = (derive_seed(seed, STREAM_ROTATION) >> 11) as f64 / (1u64 << 53) as f64;
                img = rotate_bilinear(&img, lo + (hi - lo) * unit);
            }
            let pair = training_pair(&img, &bank, &cfg.corruption, seed)?;
            let name = format!("{i:05}.png");
            save_gray(&pair.edge_input, &dirs[0].join(&name))?;
            save_rgb(&pair.target, &dirs[1].join(&name))?;
            save_mask(&pair.mask, &dirs[2].join(&name))
        })
    });
    if let Err(e) = result {
        for d in &dirs {
            let _ = fs::remove_dir_all(d);
        }
        return Err(e);
    }
    log::info!("wrote {} training triples to {}", args.count, args.out.display());
    emit_config(&cfg, &args.out)
}
