//! 3×3 square-kernel grayscale morphology with edge replication.

use super::raster::GrayImage;

fn extremum3(img: &GrayImage, pick: fn(u8, u8) -> u8) -> GrayImage {
    let (h, w) = img.dims();
    let src = img.as_raw();
    // Horizontal then vertical pass; max/min are separable over a square.
    let mut rows = vec![0u8; h * w];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let l = row[x.saturating_sub(1)];
            let r = row[(x + 1).min(w - 1)];
            rows[y * w + x] = pick(pick(l, row[x]), r);
        }
    }
    let mut out = vec![0u8; h * w];
    for y in 0..h {
        let up = y.saturating_sub(1) * w;
        let mid = y * w;
        let down = (y + 1).min(h - 1) * w;
        for x in 0..w {
            out[mid + x] = pick(pick(rows[up + x], rows[mid + x]), rows[down + x]);
        }
    }
    GrayImage::new(h, w, out).expect("dimensions carried over")
}

/// Maximum over each 3×3 neighborhood.
pub fn dilate3(img: &GrayImage) -> GrayImage {
    extremum3(img, std::cmp::max)
}

/// Minimum over each 3×3 neighborhood.
pub fn erode3(img: &GrayImage) -> GrayImage {
    extremum3(img, std::cmp::min)
}
