//! Independent reference implementations and fixture builders shared by the
//! integration tests (and, by path, the acceptance suite).
#![allow(dead_code)]

use edgerec::imgcore::{FloatMap, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairwise AUROC: a positive outranking a negative scores 1, a tie 1/2.
pub fn brute_auroc(scores: &[f64], labels: &[bool]) -> f64 {
    let (mut wins, mut pairs) = (0.0, 0.0);
    for (i, &si) in scores.iter().enumerate() {
        if !labels[i] {
            continue;
        }
        for (j, &sj) in scores.iter().enumerate() {
            if labels[j] {
                continue;
            }
            pairs += 1.0;
            if si > sj {
                wins += 1.0;
            } else if si == sj {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

/// AP by enumerating every distinct threshold and recounting from scratch.
pub fn brute_ap(scores: &[f64], labels: &[bool]) -> f64 {
    let p = labels.iter().filter(|&&l| l).count() as f64;
    let mut thresholds: Vec<f64> = scores.to_vec();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let mut ap = 0.0;
    let mut prev_recall = 0.0;
    for t in thresholds {
        let mut tp = 0.0;
        let mut fp = 0.0;
        for (&s, &l) in scores.iter().zip(labels) {
            if s >= t {
                if l {
                    tp += 1.0;
                } else {
                    fp += 1.0;
                }
            }
        }
        let recall = tp / p;
        ap += (recall - prev_recall) * tp / (tp + fp);
        prev_recall = recall;
    }
    ap
}

/// 8-connected labelling by recursive flood fill; returns one pixel list per region.
pub fn flood_regions(mask: &FloatMap) -> Vec<Vec<(usize, usize)>> {
    let (h, w) = mask.dims();
    let mut seen = vec![false; h * w];
    let mut out = Vec::new();
    fn fill(mask: &FloatMap, seen: &mut [bool], y: usize, x: usize, acc: &mut Vec<(usize, usize)>) {
        let (h, w) = mask.dims();
        if seen[y * w + x] || mask.get(y, x) <= 0.0 {
            return;
        }
        seen[y * w + x] = true;
        acc.push((y, x));
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                let (ny, nx) = (y as i64 + dy, x as i64 + dx);
                if ny >= 0 && nx >= 0 && (ny as usize) < h && (nx as usize) < w {
                    fill(mask, seen, ny as usize, nx as usize, acc);
                }
            }
        }
    }
    for y in 0..h {
        for x in 0..w {
            let mut acc = Vec::new();
            fill(mask, &mut seen, y, x, &mut acc);
            if !acc.is_empty() {
                out.push(acc);
            }
        }
    }
    out
}

/// AUPRO with every distinct pooled score as a threshold, each point
/// recomputed from scratch, integrated by trapezoids with linear
/// interpolation at the limit.
pub fn brute_aupro(maps: &[FloatMap], gts: &[FloatMap], limit: f64) -> f64 {
    let regions: Vec<(usize, Vec<(usize, usize)>)> = gts
        .iter()
        .enumerate()
        .flat_map(|(i, g)| flood_regions(g).into_iter().map(move |r| (i, r)))
        .collect();
    let mut thresholds: Vec<f32> = maps.iter().flat_map(|m| m.as_raw().iter().copied()).collect();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let negatives: usize = gts.iter().map(|g| g.as_raw().iter().filter(|&&v| v <= 0.0).count()).sum();
    let mut pts = vec![(0.0f64, 0.0f64)];
    for t in thresholds {
        let fp: usize = maps
            .iter()
            .zip(gts)
            .map(|(m, g)| m.as_raw().iter().zip(g.as_raw()).filter(|(&s, &l)| l <= 0.0 && s >= t).count())
            .sum();
        let pro: f64 = regions
            .iter()
            .map(|(i, r)| r.iter().filter(|&&(y, x)| maps[*i].get(y, x) >= t).count() as f64 / r.len() as f64)
            .sum::<f64>()
            / regions.len() as f64;
        pts.push((fp as f64 / negatives as f64, pro));
    }
    let mut area = 0.0;
    for win in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (win[0], win[1]);
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

/// Random scores and labels with both classes present and frequent ties.
pub fn random_scored(r: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<bool>) {
    loop {
        let levels = r.random_range(2..=n.max(2));
        let scores: Vec<f64> = (0..n).map(|_| r.random_range(0..levels) as f64 / levels as f64).collect();
        let labels: Vec<bool> = (0..n).map(|_| r.random_bool(0.4)).collect();
        if labels.iter().any(|&l| l) && labels.iter().any(|&l| !l) {
            return (scores, labels);
        }
    }
}

/// Random blob masks plus noisy maps that correlate with them.
pub fn random_pro_fixture(r: &mut ChaCha8Rng, images: usize, h: usize, w: usize) -> (Vec<FloatMap>, Vec<FloatMap>) {
    loop {
        let mut maps = Vec::new();
        let mut gts = Vec::new();
        for _ in 0..images {
            let mut gt = FloatMap::zeros(h, w);
            for _ in 0..r.random_range(0..3) {
                let (bh, bw) = (r.random_range(1..=h / 2), r.random_range(1..=w / 2));
                let (y0, x0) = (r.random_range(0..=h - bh), r.random_range(0..=w - bw));
                for y in y0..y0 + bh {
                    for x in x0..x0 + bw {
                        gt.set(y, x, 1.0);
                    }
                }
            }
            let quant = r.random_range(4..64) as f32;
            let map = FloatMap::from_fn(h, w, |y, x| {
                let noise: f32 = r.random();
                ((gt.get(y, x) * 0.5 + noise) * quant).floor() / quant
            });
            maps.push(map);
            gts.push(gt);
        }
        let has_region = gts.iter().any(|g| g.count_positive() > 0);
        let has_negative = gts.iter().any(|g| g.count_positive() < g.len());
        if has_region && has_negative {
            return (maps, gts);
        }
    }
}

/// Smooth stripes-and-checks pattern; `variant` shifts phase and tint.
pub fn patterned_image(h: usize, w: usize, variant: u64) -> RgbImage {
    let phase = (variant % 7) as f64;
    RgbImage::from_fn(h, w, |y, x| {
        let (yf, xf) = (y as f64, x as f64);
        let s = ((xf + phase * 3.0) / 8.0).sin() * ((yf + phase) / 11.0).cos();
        let check = if ((y / 32) + (x / 32)) % 2 == 0 { 20.0 } else { -20.0 };
        let base = 128.0 + 60.0 * s + check;
        [
            (base + 10.0) as u8,
            (base * 0.8 + 20.0) as u8,
            (base * 0.6 + (variant % 5) as f64 * 4.0) as u8,
        ]
    })
}

pub fn random_image(r: &mut ChaCha8Rng, h: usize, w: usize) -> RgbImage {
    RgbImage::from_fn(h, w, |_, _| [r.random(), r.random(), r.random()])
}

/// A vivid 64x64 texture, distinct per `i`.
pub fn texture_image(i: usize) -> RgbImage {
    RgbImage::from_fn(64, 64, |y, x| {
        let v = ((x * (3 + i) + y * (5 + 2 * i)) % 64) as u8;
        [255 - v * 3, v * 4, if (x / 4 + y / 4) % 2 == 0 { 30 } else { 230 }]
    })
}
