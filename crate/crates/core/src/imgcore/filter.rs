//! Linear filtering on float maps.

use super::raster::FloatMap;
use crate::error::{Error, Result};

/// Mirror reflection that does not repeat the edge sample: `-1 → 1`, `n → n-2`.
///
/// Valid for offsets up to `n - 1` beyond either edge.
#[inline]
pub(crate) fn reflect101(i: isize, n: usize) -> usize {
    let n = n as isize;
    if n == 1 {
        return 0;
    }
    let mut i = i;
    if i < 0 {
        i = -i;
    }
    if i >= n {
        i = 2 * (n - 1) - i;
    }
    i as usize
}

/// k×k arithmetic mean with reflect-101 borders.
///
/// Window sums are accumulated in `f64` rows-then-columns, left to right, so
/// the result is reproducible and constant maps are returned unchanged.
pub fn box_filter(map: &FloatMap, k: usize) -> Result<FloatMap> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::param("k", format!("kernel size must be odd and positive, got {k}")));
    }
    let (h, w) = map.dims();
    if k > h.min(w) {
        return Err(Error::param(
            "k",
            format!("kernel size {k} exceeds map dimensions {h}x{w}"),
        ));
    }
    if k == 1 {
        return Ok(map.clone());
    }
    let r = (k / 2) as isize;
    let src = map.as_raw();

    let mut rows = vec![0.0f64; h * w];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut s = 0.0f64;
            for d in -r..=r {
                s += f64::from(row[reflect101(x as isize + d, w)]);
            }
            rows[y * w + x] = s;
        }
    }

    let norm = (k * k) as f64;
    let mut out = vec![0.0f32; h * w];
    for y in 0..h {
        for x in 0..w {
            let mut s = 0.0f64;
            for d in -r..=r {
                s += rows[reflect101(y as isize + d, h) * w + x];
            }
            out[y * w + x] = (s / norm) as f32;
        }
    }
    FloatMap::new(h, w, out)
}
