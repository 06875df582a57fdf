//! Raster types and deterministic pixel primitives.

mod color;
mod filter;
mod morph;
mod raster;
mod resample;

pub use color::{rgb_to_lab8, to_grayscale, LabConstants};
pub(crate) use color::quantize_u8;
pub use filter::box_filter;
pub(crate) use filter::reflect101;
pub use morph::{dilate3, erode3};
pub use raster::{FloatMap, GrayImage, LabImage, RgbImage};
pub use resample::{
    avg_pool2, bilinear_upsample, resize_bilinear, resize_nearest, rotate_bilinear, AvgPool2,
};
