//! Reconstruction-quality measures: SSIM and per-pixel l2.

use crate::error::{ensure_same_dims, Error, Result};
use crate::imgcore::{reflect101, to_grayscale, FloatMap, RgbImage};

pub const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
pub const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

fn gaussian_kernel(window: usize, sigma: f64) -> Vec<f64> {
    let r = (window / 2) as f64;
    let raw: Vec<f64> = (0..window)
        .map(|i| {
            let d = i as f64 - r;
            (-(d * d) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Separable correlation with `kernel`. `valid` keeps only full windows,
/// otherwise borders are reflected (reflect-101) and the size is preserved.
fn separable(data: &[f64], h: usize, w: usize, kernel: &[f64], valid: bool) -> (Vec<f64>, usize, usize) {
    let k = kernel.len();
    let r = (k / 2) as isize;
    let (ow, oh) = if valid { (w + 1 - k, h + 1 - k) } else { (w, h) };
    let mut tmp = vec![0.0; h * ow];
    for y in 0..h {
        for x in 0..ow {
            let mut s = 0.0;
            for (i, &kv) in kernel.iter().enumerate() {
                let xx = if valid { x + i } else { reflect101(x as isize + i as isize - r, w) };
                s += kv * data[y * w + xx];
            }
            tmp[y * ow + x] = s;
        }
    }
    let mut out = vec![0.0; oh * ow];
    for y in 0..oh {
        for x in 0..ow {
            let mut s = 0.0;
            for (i, &kv) in kernel.iter().enumerate() {
                let yy = if valid { y + i } else { reflect101(y as isize + i as isize - r, h) };
                s += kv * tmp[yy * ow + x];
            }
            out[y * ow + x] = s;
        }
    }
    (out, oh, ow)
}

fn ssim_map_impl(img: &RgbImage, recon: &RgbImage, window: usize, sigma: f64, valid: bool) -> Result<FloatMap> {
    ensure_same_dims(img.dims(), recon.dims())?;
    if window == 0 || window.is_multiple_of(2) || sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::param("window", format!("need an odd window and sigma > 0, got {window}, {sigma}")));
    }
    let (h, w) = img.dims();
    if window > h || window > w {
        return Err(Error::param("window", format!("window {window} exceeds image {h}x{w}")));
    }
    let x: Vec<f64> = to_grayscale(img).as_raw().iter().map(|&v| f64::from(v)).collect();
    let y: Vec<f64> = to_grayscale(recon).as_raw().iter().map(|&v| f64::from(v)).collect();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();
    let kernel = gaussian_kernel(window, sigma);

    let (mx, oh, ow) = separable(&x, h, w, &kernel, valid);
    let (my, ..) = separable(&y, h, w, &kernel, valid);
    let (sxx, ..) = separable(&xx, h, w, &kernel, valid);
    let (syy, ..) = separable(&yy, h, w, &kernel, valid);
    let (sxy, ..) = separable(&xy, h, w, &kernel, valid);

    let data = (0..oh * ow)
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = sxx[i] - ux * ux;
            let vy = syy[i] - uy * uy;
            let cov = sxy[i] - ux * uy;
            let num = (2.0 * ux * uy + SSIM_C1) * (2.0 * cov + SSIM_C2);
            let den = (ux * ux + uy * uy + SSIM_C1) * (vx + vy + SSIM_C2);
            (num / den) as f32
        })
        .collect();
    FloatMap::new(oh, ow, data)
}

/// Gaussian-window SSIM on grayscale. Returns the mean over the valid region
/// and the valid-region map (`(h - window + 1) × (w - window + 1)`).
pub fn ssim_index(img: &RgbImage, recon: &RgbImage, window: usize, sigma: f64) -> Result<(f64, FloatMap)> {
    let map = ssim_map_impl(img, recon, window, sigma, true)?;
    Ok((map.mean(), map))
}

/// Full-resolution SSIM map with reflected borders.
pub fn ssim_map_full(img: &RgbImage, recon: &RgbImage, window: usize, sigma: f64) -> Result<FloatMap> {
    ssim_map_impl(img, recon, window, sigma, false)
}

/// Mean over channels of the squared 8-bit difference.
pub fn l2_map(img: &RgbImage, recon: &RgbImage) -> Result<FloatMap> {
    ensure_same_dims(img.dims(), recon.dims())?;
    let data = img
        .pixels()
        .zip(recon.pixels())
        .map(|(a, b)| {
            let s: i32 = (0..3).map(|c| (i32::from(a[c]) - i32::from(b[c])).pow(2)).sum();
            (f64::from(s) / 3.0) as f32
        })
        .collect();
    FloatMap::new(img.height(), img.width(), data)
}
