//! Pyramid pooling, bilinear/nearest resizing and rotation.

use super::color::quantize_u8;
use super::raster::{FloatMap, GrayImage, RgbImage};
use crate::error::{Error, Result};

/// 2× average pooling; a trailing odd row or column is dropped.
pub trait AvgPool2: Sized {
    fn avg_pool2(&self) -> Result<Self>;
}

fn pool_dims(h: usize, w: usize) -> Result<(usize, usize)> {
    if h < 2 || w < 2 {
        return Err(Error::InvalidDimensions {
            height: h,
            width: w,
            reason: "2x pooling needs at least 2 pixels per axis",
        });
    }
    Ok((h / 2, w / 2))
}

impl AvgPool2 for FloatMap {
    fn avg_pool2(&self) -> Result<Self> {
        let (oh, ow) = pool_dims(self.height(), self.width())?;
        Ok(FloatMap::from_fn(oh, ow, |y, x| {
            let s = f64::from(self.get(2 * y, 2 * x))
                + f64::from(self.get(2 * y, 2 * x + 1))
                + f64::from(self.get(2 * y + 1, 2 * x))
                + f64::from(self.get(2 * y + 1, 2 * x + 1));
            (s / 4.0) as f32
        }))
    }
}

impl AvgPool2 for GrayImage {
    fn avg_pool2(&self) -> Result<Self> {
        let (oh, ow) = pool_dims(self.height(), self.width())?;
        Ok(GrayImage::from_fn(oh, ow, |y, x| {
            let s = u32::from(self.get(2 * y, 2 * x))
                + u32::from(self.get(2 * y, 2 * x + 1))
                + u32::from(self.get(2 * y + 1, 2 * x))
                + u32::from(self.get(2 * y + 1, 2 * x + 1));
            quantize_u8(f64::from(s) / 4.0)
        }))
    }
}

pub fn avg_pool2<T: AvgPool2>(src: &T) -> Result<T> {
    src.avg_pool2()
}

/// Source taps `(i0, i1, t)` for destination index `dst` under half-pixel
/// centered sampling, clamped to the source extent.
#[inline]
fn taps(dst: usize, src_len: usize, dst_len: usize) -> (usize, usize, f64) {
    let scale = src_len as f64 / dst_len as f64;
    let s = ((dst as f64 + 0.5) * scale - 0.5).clamp(0.0, (src_len - 1) as f64);
    let i0 = s.floor() as usize;
    let i1 = (i0 + 1).min(src_len - 1);
    (i0, i1, s - i0 as f64)
}

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn bilinear_map(map: &FloatMap, h: usize, w: usize) -> FloatMap {
    let (sh, sw) = map.dims();
    let xt: Vec<_> = (0..w).map(|x| taps(x, sw, w)).collect();
    FloatMap::from_fn(h, w, |y, x| {
        let (y0, y1, ty) = taps(y, sh, h);
        let (x0, x1, tx) = xt[x];
        let g = |yy, xx| f64::from(map.get(yy, xx));
        let top = lerp(g(y0, x0), g(y0, x1), tx);
        let bottom = lerp(g(y1, x0), g(y1, x1), tx);
        lerp(top, bottom, ty) as f32
    })
}

/// Bilinear enlargement with half-pixel-centered sampling.
pub fn bilinear_upsample(map: &FloatMap, h: usize, w: usize) -> Result<FloatMap> {
    if h < map.height() || w < map.width() {
        return Err(Error::param(
            "target",
            format!(
                "upsample target {h}x{w} is smaller than source {}x{}",
                map.height(),
                map.width()
            ),
        ));
    }
    if (h, w) == map.dims() {
        return Ok(map.clone());
    }
    Ok(bilinear_map(map, h, w))
}

/// Bilinear resize of an RGB image in either direction (no anti-aliasing).
pub fn resize_bilinear(img: &RgbImage, h: usize, w: usize) -> Result<RgbImage> {
    if h == 0 || w == 0 {
        return Err(Error::InvalidDimensions {
            height: h,
            width: w,
            reason: "resize target must be non-empty",
        });
    }
    if (h, w) == img.dims() {
        return Ok(img.clone());
    }
    let (sh, sw) = img.dims();
    let xt: Vec<_> = (0..w).map(|x| taps(x, sw, w)).collect();
    Ok(RgbImage::from_fn(h, w, |y, x| {
        let (y0, y1, ty) = taps(y, sh, h);
        let (x0, x1, tx) = xt[x];
        let (p00, p01, p10, p11) = (
            img.pixel(y0, x0),
            img.pixel(y0, x1),
            img.pixel(y1, x0),
            img.pixel(y1, x1),
        );
        let mut out = [0u8; 3];
        for c in 0..3 {
            let top = lerp(f64::from(p00[c]), f64::from(p01[c]), tx);
            let bottom = lerp(f64::from(p10[c]), f64::from(p11[c]), tx);
            out[c] = quantize_u8(lerp(top, bottom, ty));
        }
        out
    }))
}

/// Nearest-neighbor resize of a float map (used for label masks).
pub fn resize_nearest(map: &FloatMap, h: usize, w: usize) -> Result<FloatMap> {
    if h == 0 || w == 0 {
        return Err(Error::InvalidDimensions {
            height: h,
            width: w,
            reason: "resize target must be non-empty",
        });
    }
    let (sh, sw) = map.dims();
    let near = |d: usize, s: usize, n: usize| {
        (((d as f64 + 0.5) * s as f64 / n as f64).floor() as usize).min(s - 1)
    };
    Ok(FloatMap::from_fn(h, w, |y, x| {
        map.get(near(y, sh, h), near(x, sw, w))
    }))
}

/// Rotates about the image center by `degrees` (counter-clockwise), bilinear
/// sampling with edge replication outside the source.
pub fn rotate_bilinear(img: &RgbImage, degrees: f64) -> RgbImage {
    if degrees == 0.0 {
        return img.clone();
    }
    let (h, w) = img.dims();
    let (sin, cos) = degrees.to_radians().sin_cos();
    let cy = (h as f64 - 1.0) / 2.0;
    let cx = (w as f64 - 1.0) / 2.0;
    RgbImage::from_fn(h, w, |y, x| {
        let dy = y as f64 - cy;
        let dx = x as f64 - cx;
        // Inverse map: destination -> source.
        let sx = (cos * dx - sin * dy + cx).clamp(0.0, (w - 1) as f64);
        let sy = (sin * dx + cos * dy + cy).clamp(0.0, (h - 1) as f64);
        let (x0, y0) = (sx.floor() as usize, sy.floor() as usize);
        let (x1, y1) = ((x0 + 1).min(w - 1), (y0 + 1).min(h - 1));
        let (tx, ty) = (sx - x0 as f64, sy - y0 as f64);
        let mut out = [0u8; 3];
        for (c, o) in out.iter_mut().enumerate() {
            let top = lerp(
                f64::from(img.pixel(y0, x0)[c]),
                f64::from(img.pixel(y0, x1)[c]),
                tx,
            );
            let bottom = lerp(
                f64::from(img.pixel(y1, x0)[c]),
                f64::from(img.pixel(y1, x1)[c]),
                tx,
            );
            *o = quantize_u8(lerp(top, bottom, ty));
        }
        out
    })
}
