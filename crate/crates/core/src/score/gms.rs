//! Gradient magnitude similarity and its multi-scale average.

use super::config::ScoreConfig;
use crate::error::{ensure_same_dims, Error, Result};
use crate::imgcore::{avg_pool2, bilinear_upsample, reflect101, to_grayscale, FloatMap, RgbImage};

/// Prewitt gradient magnitude (kernel taps ±1/3), reflect-101 borders.
pub fn gradient_magnitude(gray: &FloatMap) -> FloatMap {
    let (h, w) = gray.dims();
    let src = gray.as_raw();
    let at = |y: isize, x: isize| f64::from(src[reflect101(y, h) * w + reflect101(x, w)]);
    FloatMap::from_fn(h, w, |y, x| {
        let (y, x) = (y as isize, x as isize);
        let mut gx = 0.0;
        let mut gy = 0.0;
        for d in -1..=1 {
            gx += at(y + d, x + 1) - at(y + d, x - 1);
            gy += at(y + 1, x + d) - at(y - 1, x + d);
        }
        let (gx, gy) = (gx / 3.0, gy / 3.0);
        (gx * gx + gy * gy).sqrt() as f32
    })
}

/// Similarity of two gradient magnitudes; 1 when they agree.
#[inline]
pub fn gms_value(ga: f64, gb: f64, k: f64) -> f64 {
    (2.0 * ga * gb + k) / (ga * ga + gb * gb + k)
}

/// Per-pixel GMS between two grayscale maps.
pub fn gms(a: &FloatMap, b: &FloatMap, k: f64) -> Result<FloatMap> {
    ensure_same_dims(a.dims(), b.dims())?;
    gradient_magnitude(a).zip_with(&gradient_magnitude(b), |ga, gb| {
        gms_value(f64::from(ga), f64::from(gb), k) as f32
    })
}

/// GMS averaged over an average-pooling pyramid, each level brought back to
/// full resolution bilinearly. Computed on grayscale.
pub fn msgms(img: &RgbImage, recon: &RgbImage, cfg: &ScoreConfig) -> Result<FloatMap> {
    ensure_same_dims(img.dims(), recon.dims())?;
    if cfg.pyramid_levels == 0 {
        return Err(Error::param("pyramid_levels", "at least one level is required"));
    }
    let (h, w) = img.dims();
    let deepest = 1usize << (cfg.pyramid_levels - 1);
    if h / deepest < 2 || w / deepest < 2 {
        return Err(Error::param(
            "pyramid_levels",
            format!("{} levels are too deep for a {h}x{w} image", cfg.pyramid_levels),
        ));
    }

    let mut a = to_grayscale(img).to_float_map();
    let mut b = to_grayscale(recon).to_float_map();
    let mut acc = vec![0.0f64; h * w];
    for level in 0..cfg.pyramid_levels {
        if level > 0 {
            a = avg_pool2(&a)?;
            b = avg_pool2(&b)?;
        }
        let g = bilinear_upsample(&gms(&a, &b, cfg.gms_constant)?, h, w)?;
        for (s, &v) in acc.iter_mut().zip(g.as_raw()) {
            *s += f64::from(v);
        }
    }
    let n = cfg.pyramid_levels as f64;
    FloatMap::new(h, w, acc.into_iter().map(|s| (s / n) as f32).collect())
}
