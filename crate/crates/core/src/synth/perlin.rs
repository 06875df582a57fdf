use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imgcore::FloatMap;

/// Seeded gradient-lattice noise over an image grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PerlinField {
    pub map: FloatMap,
    /// Lattice cells across the width.
    pub period_x: u32,
    /// Lattice cells across the height.
    pub period_y: u32,
    pub seed: u64,
}

#[inline]
fn fade(t: f64) -> f64 {
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

/// Classic 2D Perlin noise with a quintic fade.
///
/// The lattice is periodic (`period_x` × `period_y` unit gradients drawn from
/// a ChaCha8 stream), pixel `(y, x)` sits at lattice coordinate
/// `(y·period_y/h, x·period_x/w)`, and values are scaled by √2 so they span
/// `[-1, 1]`.
pub fn perlin_noise(h: usize, w: usize, period_x: u32, period_y: u32, seed: u64) -> Result<PerlinField> {
    if h == 0 || w == 0 {
        return Err(Error::InvalidDimensions {
            height: h,
            width: w,
            reason: "noise field must be non-empty",
        });
    }
    if period_x == 0 || period_y == 0 {
        return Err(Error::param("period", "lattice periods must be at least 1"));
    }
    let (px, py) = (period_x as usize, period_y as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grads: Vec<(f64, f64)> = (0..px * py)
        .map(|_| {
            let angle = rng.random::<f64>() * std::f64::consts::TAU;
            let (s, c) = angle.sin_cos();
            (c, s)
        })
        .collect();
    let grad = |gy: usize, gx: usize| grads[(gy % py) * px + gx % px];

    let map = FloatMap::from_fn(h, w, |y, x| {
        let u = x as f64 * period_x as f64 / w as f64;
        let v = y as f64 * period_y as f64 / h as f64;
        let (cx, cy) = (u.floor() as usize, v.floor() as usize);
        let (fx, fy) = (u - cx as f64, v - cy as f64);
        let dot = |gy, gx, dx: f64, dy: f64| {
            let (gxv, gyv) = grad(gy, gx);
            gxv * dx + gyv * dy
        };
        let n00 = dot(cy, cx, fx, fy);
        let n10 = dot(cy, cx + 1, fx - 1.0, fy);
        let n01 = dot(cy + 1, cx, fx, fy - 1.0);
        let n11 = dot(cy + 1, cx + 1, fx - 1.0, fy - 1.0);
        let (sx, sy) = (fade(fx), fade(fy));
        let value = lerp(lerp(n00, n10, sx), lerp(n01, n11, sx), sy) * std::f64::consts::SQRT_2;
        value.clamp(-1.0, 1.0) as f32
    });
    Ok(PerlinField {
        map,
        period_x,
        period_y,
        seed,
    })
}

/// Min–max normalizes the field and keeps pixels strictly above `threshold`.
///
/// A constant field has no range to normalize and yields an empty mask.
pub fn perlin_mask(field: &PerlinField, threshold: f64) -> Result<FloatMap> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::param("threshold", format!("must lie in (0, 1), got {threshold}")));
    }
    let m = &field.map;
    let (lo, hi) = (f64::from(m.min()), f64::from(m.max()));
    if hi <= lo {
        return Ok(FloatMap::zeros(m.height(), m.width()));
    }
    Ok(m.map(|v| {
        let n = (f64::from(v) - lo) / (hi - lo);
        if n > threshold {
            1.0
        } else {
            0.0
        }
    }))
}
