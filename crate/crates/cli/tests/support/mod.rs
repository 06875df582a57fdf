//! Fixture trees and binary invocation helpers for the CLI tests.
#![allow(dead_code)]

#[path = "../../../core/tests/common/mod.rs"]
pub mod oracles;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use edgerec::dataset::{save_mask, save_rgb};
use edgerec::imgcore::RgbImage;
use edgerec::synth::{corrupt, CorruptionConfig, TextureBank};

pub const CATEGORY: &str = "widget";

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_edgerec"));
    c.env("RUST_LOG", "warn");
    c
}

pub fn edgerec(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Layout of a synthetic category: where the dataset and its perfect
/// reconstructions live.
pub struct Fixture {
    pub root: PathBuf,
    pub dataset: PathBuf,
    pub recon: PathBuf,
    pub textures: PathBuf,
}

impl Fixture {
    pub fn data_args(&self) -> Vec<String> {
        vec![
            "--dataset".into(),
            self.dataset.to_str().unwrap().into(),
            "--category".into(),
            CATEGORY.into(),
        ]
    }
}

/// `n_train` normal training images, `n_good` normal and `n_bad` corrupted
/// test images (texture blend and CutPaste both applied), each
/// `size`x`size`. Reconstructions are the clean originals.
///
/// Corruptions are kept local (coarse Perlin blobs above 0.75, small
/// patches) so that ground truth covers a minority of each image.
pub fn synthetic_category(root: &Path, n_train: usize, n_good: usize, n_bad: usize, size: usize) -> Fixture {
    let dataset = root.join("data");
    let recon = root.join("recon");
    let textures = root.join("textures");
    let cat = dataset.join(CATEGORY);
    for i in 0..4 {
        save_rgb(&oracles::texture_image(i), &textures.join(format!("tex{i:02}.png"))).unwrap();
    }
    let bank = edgerec::dataset::load_texture_bank(&textures, Some((size, size))).unwrap();
    for i in 0..n_train {
        let img = oracles::patterned_image(size, size, i as u64);
        save_rgb(&img, &cat.join(format!("train/good/{i:03}.png"))).unwrap();
    }
    for i in 0..n_good {
        let img = oracles::patterned_image(size, size, 100 + i as u64);
        let name = format!("{i:03}.png");
        save_rgb(&img, &cat.join("test/good").join(&name)).unwrap();
        save_rgb(&img, &recon.join("good").join(&name)).unwrap();
    }
    let cfg = CorruptionConfig {
        p_texture: 1.0,
        p_cutpaste: 1.0,
        perlin_threshold: 0.75,
        perlin_scale_exponents: vec![0, 1, 2],
        cutpaste_area_range: (0.02, 0.08),
        ..CorruptionConfig::default()
    };
    for i in 0..n_bad {
        let clean = oracles::patterned_image(size, size, 200 + i as u64);
        let out = corrupt(&clean, &bank, &cfg, 1000 + i as u64).unwrap();
        let name = format!("{i:03}.png");
        save_rgb(&out.corrupted, &cat.join("test/synthetic").join(&name)).unwrap();
        save_mask(&out.mask, &cat.join("ground_truth/synthetic").join(format!("{i:03}_mask.png"))).unwrap();
        save_rgb(&clean, &recon.join("synthetic").join(&name)).unwrap();
    }
    Fixture {
        root: root.to_path_buf(),
        dataset,
        recon,
        textures,
    }
}

pub fn empty_bank() -> TextureBank {
    TextureBank::empty()
}

/// Relative path -> bytes for every file below `dir`.
pub fn tree(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, acc: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for e in fs::read_dir(dir).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                walk(root, &path, acc);
            } else {
                acc.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    let mut acc = BTreeMap::new();
    walk(dir, dir, &mut acc);
    acc
}

pub fn solid(v: [u8; 3], n: usize) -> RgbImage {
    RgbImage::filled(n, n, v)
}
