use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::CorruptionConfig;
use crate::error::{Error, Result};
use crate::imgcore::{FloatMap, RgbImage};

/// Rectangle sampling gives up after this many misfits.
pub const MAX_RECT_RETRIES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub y: usize,
    pub x: usize,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn area(&self) -> usize {
        self.height * self.width
    }

    pub fn contains(&self, y: usize, x: usize) -> bool {
        y >= self.y && y < self.y + self.height && x >= self.x && x < self.x + self.width
    }
}

#[derive(Clone, Debug)]
pub struct CutPaste {
    pub image: RgbImage,
    /// 1 on the paste destination.
    pub mask: FloatMap,
    pub source: Rect,
    pub dest: Rect,
}

pub(crate) fn uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

/// Copies a random rectangle of `img` onto another random location.
///
/// Area fraction and aspect ratio (width / height) are drawn uniformly from
/// the configured ranges; sizes that do not fit are redrawn.
pub fn cutpaste(img: &RgbImage, cfg: &CorruptionConfig, seed: u64) -> Result<CutPaste> {
    let (lo, hi) = cfg.cutpaste_area_range;
    if !(lo > 0.0 && lo <= hi && hi < 1.0) {
        return Err(Error::param(
            "cutpaste_area_range",
            format!("[{lo}, {hi}] must satisfy 0 < lo <= hi < 1"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h, w) = img.dims();
    let area = (h * w) as f64;
    for _ in 0..MAX_RECT_RETRIES {
        let frac = uniform(&mut rng, cfg.cutpaste_area_range);
        let aspect = uniform(&mut rng, cfg.cutpaste_aspect_range);
        let rw = (frac * area * aspect).sqrt().round() as usize;
        let rh = (frac * area / aspect).sqrt().round() as usize;
        if rw == 0 || rh == 0 || rw > w || rh > h {
            continue;
        }
        let source = Rect {
            y: rng.random_range(0..=h - rh),
            x: rng.random_range(0..=w - rw),
            height: rh,
            width: rw,
        };
        let dest = Rect {
            y: rng.random_range(0..=h - rh),
            x: rng.random_range(0..=w - rw),
            height: rh,
            width: rw,
        };
        return Ok(paste(img, source, dest));
    }
    Err(Error::CutPasteNoFit {
        retries: MAX_RECT_RETRIES,
    })
}

fn paste(img: &RgbImage, source: Rect, dest: Rect) -> CutPaste {
    let (h, w) = img.dims();
    let mut image = img.clone();
    let mut mask = FloatMap::zeros(h, w);
    for dy in 0..dest.height {
        for dx in 0..dest.width {
            let px = img.pixel(source.y + dy, source.x + dx);
            image.put_pixel(dest.y + dy, dest.x + dx, px);
            mask.set(dest.y + dy, dest.x + dx, 1.0);
        }
    }
    CutPaste {
        image,
        mask,
        source,
        dest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(h: usize, w: usize) -> RgbImage {
        RgbImage::from_fn(h, w, |y, x| [(y * 4) as u8, (x * 4) as u8, ((x ^ y) * 3) as u8])
    }

    #[test]
    fn deterministic_per_seed() {
        let img = pattern(64, 64);
        let cfg = CorruptionConfig::default();
        let a = cutpaste(&img, &cfg, 11).unwrap();
        let b = cutpaste(&img, &cfg, 11).unwrap();
        assert_eq!(a.image, b.image);
        assert_eq!(a.mask, b.mask);
        assert_eq!(a.dest, b.dest);
    }

    #[test]
    fn quarter_area_rectangle() {
        let img = pattern(64, 64);
        let cfg = CorruptionConfig {
            cutpaste_area_range: (0.25, 0.25),
            cutpaste_aspect_range: (1.0, 1.0),
            ..Default::default()
        };
        for seed in 0..20 {
            let cp = cutpaste(&img, &cfg, seed).unwrap();
            assert_eq!(cp.mask.count_positive(), 1024);
            assert_eq!(cp.dest.area(), 1024);
        }
    }

    #[test]
    fn self_paste_leaves_image_unchanged() {
        let img = pattern(64, 64);
        let cfg = CorruptionConfig {
            cutpaste_area_range: (0.9, 0.9),
            cutpaste_aspect_range: (1.0, 1.0),
            ..Default::default()
        };
        let hit = (0..100_000u64)
            .map(|s| cutpaste(&img, &cfg, s).unwrap())
            .find(|cp| cp.source == cp.dest)
            .expect("a seed with equal source and destination");
        assert_eq!(hit.image, img);
        assert_eq!(hit.mask.count_positive(), hit.dest.area());
    }

    #[test]
    fn mask_marks_destination_and_changes_only_inside() {
        let img = pattern(48, 40);
        let cfg = CorruptionConfig::default();
        for seed in 0..30 {
            let cp = cutpaste(&img, &cfg, seed).unwrap();
            for y in 0..48 {
                for x in 0..40 {
                    let inside = cp.dest.contains(y, x);
                    assert_eq!(cp.mask.get(y, x) == 1.0, inside);
                    if !inside {
                        assert_eq!(cp.image.pixel(y, x), img.pixel(y, x));
                    }
                }
            }
        }
    }

    #[test]
    fn misfit_rectangles_fail_after_retries() {
        let img = pattern(8, 8);
        let cfg = CorruptionConfig {
            cutpaste_area_range: (0.5, 0.5),
            cutpaste_aspect_range: (50.0, 50.0),
            ..Default::default()
        };
        assert!(matches!(cutpaste(&img, &cfg, 0), Err(Error::CutPasteNoFit { .. })));
    }
}
