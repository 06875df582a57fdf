//! Row-major raster buffers.

use crate::error::{Error, Result};

fn check_dims(height: usize, width: usize, len: usize, channels: usize) -> Result<()> {
    if height == 0 || width == 0 {
        return Err(Error::InvalidDimensions {
            height,
            width,
            reason: "both dimensions must be at least 1",
        });
    }
    if len != height * width * channels {
        return Err(Error::InvalidDimensions {
            height,
            width,
            reason: "buffer length does not match dimensions",
        });
    }
    Ok(())
}

macro_rules! raster_common {
    ($ty:ident, $elem:ty, $channels:expr) => {
        impl $ty {
            pub const CHANNELS: usize = $channels;

            /// Wraps a row-major buffer, validating its length.
            pub fn new(height: usize, width: usize, data: Vec<$elem>) -> Result<Self> {
                check_dims(height, width, data.len(), $channels)?;
                Ok(Self {
                    height,
                    width,
                    data,
                })
            }

            pub fn height(&self) -> usize {
                self.height
            }

            pub fn width(&self) -> usize {
                self.width
            }

            /// `(height, width)`
            pub fn dims(&self) -> (usize, usize) {
                (self.height, self.width)
            }

            pub fn len(&self) -> usize {
                self.height * self.width
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn as_raw(&self) -> &[$elem] {
                &self.data
            }

            pub fn as_raw_mut(&mut self) -> &mut [$elem] {
                &mut self.data
            }

            pub fn into_raw(self) -> Vec<$elem> {
                self.data
            }
        }
    };
}

/// 8-bit RGB image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RgbImage {
    height: usize,
    width: usize,
    data: Vec<u8>,
}

raster_common!(RgbImage, u8, 3);

impl RgbImage {
    /// Panics if either dimension is zero.
    pub fn filled(height: usize, width: usize, px: [u8; 3]) -> Self {
        Self::from_fn(height, width, |_, _| px)
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Self {
        assert!(height > 0 && width > 0, "image dimensions must be non-zero");
        let mut data = Vec::with_capacity(height * width * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(y, x));
            }
        }
        Self {
            height,
            width,
            data,
        }
    }

    #[inline]
    pub fn pixel(&self, y: usize, x: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn put_pixel(&mut self, y: usize, x: usize, px: [u8; 3]) {
        let i = (y * self.width + x) * 3;
        self.data[i..i + 3].copy_from_slice(&px);
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }
}

/// 8-bit single-channel image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    height: usize,
    width: usize,
    data: Vec<u8>,
}

raster_common!(GrayImage, u8, 1);

impl GrayImage {
    /// Panics if either dimension is zero.
    pub fn filled(height: usize, width: usize, value: u8) -> Self {
        assert!(height > 0 && width > 0, "image dimensions must be non-zero");
        Self {
            height,
            width,
            data: vec![value; height * width],
        }
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        assert!(height > 0 && width > 0, "image dimensions must be non-zero");
        let mut data = Vec::with_capacity(height * width);
        for y in 0..height {
            for x in 0..width {
                data.push(f(y, x));
            }
        }
        Self {
            height,
            width,
            data,
        }
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize) -> u8 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, v: u8) {
        self.data[y * self.width + x] = v;
    }

    pub fn to_float_map(&self) -> FloatMap {
        FloatMap {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|&v| f32::from(v)).collect(),
        }
    }
}

/// CIELAB image in the 8-bit offset encoding `(L·255/100, a+128, b+128)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabImage {
    height: usize,
    width: usize,
    data: Vec<u8>,
}

raster_common!(LabImage, u8, 3);

impl LabImage {
    #[inline]
    pub fn pixel(&self, y: usize, x: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }
}

/// Real-valued map (anomaly maps, similarity maps, noise fields).
///
/// Values are stored as `f32` so that maps persist losslessly in PFM files;
/// reductions over maps accumulate in `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMap {
    height: usize,
    width: usize,
    data: Vec<f32>,
}

raster_common!(FloatMap, f32, 1);

impl FloatMap {
    /// Panics if either dimension is zero.
    pub fn filled(height: usize, width: usize, value: f32) -> Self {
        assert!(height > 0 && width > 0, "map dimensions must be non-zero");
        Self {
            height,
            width,
            data: vec![value; height * width],
        }
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::filled(height, width, 0.0)
    }

    /// Panics if either dimension is zero.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f32) -> Self {
        assert!(height > 0 && width > 0, "map dimensions must be non-zero");
        let mut data = Vec::with_capacity(height * width);
        for y in 0..height {
            for x in 0..width {
                data.push(f(y, x));
            }
        }
        Self {
            height,
            width,
            data,
        }
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize) -> f32 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, v: f32) {
        self.data[y * self.width + x] = v;
    }

    pub fn map(&self, f: impl Fn(f32) -> f32) -> FloatMap {
        FloatMap {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pixelwise combination of two maps of identical shape.
    pub fn zip_with(&self, other: &FloatMap, f: impl Fn(f32, f32) -> f32) -> Result<FloatMap> {
        crate::error::ensure_same_dims(self.dims(), other.dims())?;
        Ok(FloatMap {
            height: self.height,
            width: self.width,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn max(&self) -> f32 {
        self.data.iter().copied().fold(f32::NEG_INFINITY, f32::max)
    }

    pub fn min(&self) -> f32 {
        self.data.iter().copied().fold(f32::INFINITY, f32::min)
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().map(|&v| f64::from(v)).sum::<f64>() / self.data.len() as f64
    }

    /// Position `(y, x)` of the first minimum in row-major order.
    pub fn argmin(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, &v) in self.data.iter().enumerate() {
            if v < self.data[best] {
                best = i;
            }
        }
        (best / self.width, best % self.width)
    }

    /// Number of strictly positive entries; for binary masks this is the area.
    pub fn count_positive(&self) -> usize {
        self.data.iter().filter(|&&v| v > 0.0).count()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> FloatMap {
        FloatMap::from_fn(self.width, self.height, |y, x| self.get(x, y))
    }
}
