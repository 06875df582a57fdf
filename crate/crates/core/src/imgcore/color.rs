//! Grayscale and CIELAB conversion.

use serde::{Deserialize, Serialize};

use super::raster::{GrayImage, LabImage, RgbImage};

/// Quantizes to 8 bits with round-half-away-from-zero and saturation.
#[inline]
pub(crate) fn quantize_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// BT.601 luma. Total function; output dimensions equal the input.
pub fn to_grayscale(img: &RgbImage) -> GrayImage {
    let data = img
        .pixels()
        .map(|[r, g, b]| {
            quantize_u8(0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b))
        })
        .collect();
    GrayImage::new(img.height(), img.width(), data).expect("dimensions carried over")
}

/// Constants of the linear RGB → XYZ → CIELAB transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabConstants {
    pub rgb_to_xyz: [[f64; 3]; 3],
    pub white_point: [f64; 3],
    pub f_threshold: f64,
    pub f_slope: f64,
    pub f_offset: f64,
}

impl Default for LabConstants {
    fn default() -> Self {
        let rgb_to_xyz = [
            [0.412453, 0.357580, 0.180423],
            [0.212671, 0.715160, 0.072169],
            [0.019334, 0.119193, 0.950227],
        ];
        // Row sums, so that RGB white lands exactly on a = b = 0.
        let white_point = [0.950456, 1.0, 1.088754];
        Self {
            rgb_to_xyz,
            white_point,
            f_threshold: (6.0f64 / 29.0).powi(3),
            f_slope: 841.0 / 108.0,
            f_offset: 4.0 / 29.0,
        }
    }
}

impl LabConstants {
    #[inline]
    fn f(&self, t: f64) -> f64 {
        if t > self.f_threshold {
            t.cbrt()
        } else {
            self.f_slope * t + self.f_offset
        }
    }

    /// Unquantized `(L, a, b)` of one 8-bit RGB pixel. No gamma linearization.
    pub fn lab(&self, [r, g, b]: [u8; 3]) -> [f64; 3] {
        let rgb = [f64::from(r) / 255.0, f64::from(g) / 255.0, f64::from(b) / 255.0];
        let m = &self.rgb_to_xyz;
        let mut f = [0.0; 3];
        for (i, row) in m.iter().enumerate() {
            let v = row[0] * rgb[0] + row[1] * rgb[1] + row[2] * rgb[2];
            f[i] = self.f(v / self.white_point[i]);
        }
        [116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])]
    }

    /// 8-bit encoded `(L8, a8, b8)` of one pixel.
    pub fn lab8(&self, px: [u8; 3]) -> [u8; 3] {
        let [l, a, b] = self.lab(px);
        [
            quantize_u8(l * 255.0 / 100.0),
            quantize_u8(a + 128.0),
            quantize_u8(b + 128.0),
        ]
    }
}

pub fn rgb_to_lab8(img: &RgbImage, consts: &LabConstants) -> LabImage {
    let mut data = Vec::with_capacity(img.len() * 3);
    for px in img.pixels() {
        data.extend_from_slice(&consts.lab8(px));
    }
    LabImage::new(img.height(), img.width(), data).expect("dimensions carried over")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grayscale_examples() {
        let white = to_grayscale(&RgbImage::filled(3, 4, [255, 255, 255]));
        assert!(white.as_raw().iter().all(|&v| v == 255));
        let black = to_grayscale(&RgbImage::filled(3, 4, [0, 0, 0]));
        assert!(black.as_raw().iter().all(|&v| v == 0));
        // round(0.299 * 255) = round(76.245)
        assert_eq!(to_grayscale(&RgbImage::filled(1, 1, [255, 0, 0])).get(0, 0), 76);
    }

    #[test]
    fn lab_reference_points() {
        let c = LabConstants::default();
        assert_eq!(c.lab8([255, 255, 255]), [255, 128, 128]);
        assert_eq!(c.lab8([0, 0, 0]), [0, 128, 128]);
        // Frozen from the high-precision oracle in tests/oracle/lab_oracle.py.
        assert_eq!(c.lab8([255, 0, 0]), [136, 208, 195]);
        assert_eq!(c.lab8([0, 255, 0]), [224, 42, 211]);
        assert_eq!(c.lab8([0, 0, 255]), [82, 207, 20]);
    }

    #[test]
    fn achromatic_pixels_have_neutral_chroma() {
        let c = LabConstants::default();
        for v in 0..=255u8 {
            let [_, a, b] = c.lab8([v, v, v]);
            assert_eq!((a, b), (128, 128), "gray level {v}");
            let [_, af, bf] = c.lab([v, v, v]);
            assert!(af.abs() < 1e-9 && bf.abs() < 1e-9);
        }
    }

    #[test]
    fn white_point_is_matrix_row_sums() {
        let c = LabConstants::default();
        for (row, w) in c.rgb_to_xyz.iter().zip(c.white_point) {
            assert!((row.iter().sum::<f64>() - w).abs() < 1e-12);
        }
    }
}
