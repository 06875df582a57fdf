use std::fs;
use std::path::{Path, PathBuf};

use edgerec::dataset::{load_image, save_gray, RunPaths};
use edgerec::edge::edge_pipeline;
use edgerec::{Error, Result};
use rayon::prelude::*;

use super::{emit_config, pool};
use crate::args::EdgeArgs;
use crate::config::merged_config;

fn collect_images(root: &Path, dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<_>>()?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect_images(root, &p, out)?;
        } else if matches!(
            p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref(),
            Some("png" | "jpg" | "jpeg")
        ) {
            out.push(p.strip_prefix(root).expect("walked below root").to_path_buf());
        }
    }
    Ok(())
}

/// Resizes each image to the configured size and writes its grayscale edge
/// as PNG at the same relative path under `--out`.
pub fn edge(args: &EdgeArgs) -> Result<()> {
    let cfg = merged_config(
        &args.cfg,
        RunPaths {
            dataset: Some(args.input.clone()),
            out: Some(args.out.clone()),
            ..RunPaths::default()
        },
    )?;
    let mut files = Vec::new();
    collect_images(&args.input, &args.input, &mut files)?;
    let pool = pool(args.cfg.jobs)?;
    let failures: Vec<Error> = pool.install(|| {
        files
            .par_iter()
            .filter_map(|rel| {
                let img = match load_image(&args.input.join(rel), Some(cfg.resize)) {
                    Ok(img) => img,
                    Err(e) => return Some(e),
                };
                save_gray(&edge_pipeline(&img), &args.out.join(rel).with_extension("png")).err()
            })
            .collect()
    });
    for e in &failures {
        log::error!("{e}");
    }
    log::info!("{} of {} images converted", files.len() - failures.len(), files.len());
    match failures.into_iter().next() {
        Some(first) => Err(first),
        None => emit_config(&cfg, &args.out),
    }
}
