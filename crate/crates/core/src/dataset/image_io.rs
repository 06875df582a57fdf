use std::fs;
use std::path::{Path, PathBuf};

use image::{ImageBuffer, Luma, Rgb};

use super::index::{is_image_file, SampleRecord};
use crate::error::{Error, Result};
use crate::imgcore::{resize_bilinear, resize_nearest, FloatMap, GrayImage, RgbImage};
use crate::synth::TextureBank;

fn decode(path: &Path) -> Result<image::DynamicImage> {
    let img = image::open(path).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    if img.width() == 0 || img.height() == 0 {
        return Err(Error::Decode {
            path: path.to_path_buf(),
            reason: "image has a zero dimension".into(),
        });
    }
    Ok(img)
}

/// Decodes to 8-bit RGB and, if `resize` is `(h, w)`, resizes bilinearly.
pub fn load_image(path: &Path, resize: Option<(usize, usize)>) -> Result<RgbImage> {
    let rgb = decode(path)?.into_rgb8();
    let (w, h) = rgb.dimensions();
    let img = RgbImage::new(h as usize, w as usize, rgb.into_raw())?;
    match resize {
        Some((rh, rw)) => resize_bilinear(&img, rh, rw),
        None => Ok(img),
    }
}

/// Decodes a label mask: nearest-neighbor resize, then `> 0` becomes 1.
pub fn load_mask(path: &Path, resize: Option<(usize, usize)>) -> Result<FloatMap> {
    let gray = decode(path)?.into_luma8();
    let (w, h) = gray.dimensions();
    let raw = gray.into_raw().into_iter().map(f32::from).collect();
    let mut map = FloatMap::new(h as usize, w as usize, raw)?;
    if let Some((rh, rw)) = resize {
        map = resize_nearest(&map, rh, rw)?;
    }
    Ok(map.map(|v| if v > 0.0 { 1.0 } else { 0.0 }))
}

/// Image, reconstruction and mask of a matched test record. The image is
/// resized to `resize`; the reconstruction must already have that size. Good
/// samples get an all-zero mask.
pub fn load_test_sample(rec: &SampleRecord, resize: (usize, usize)) -> Result<(RgbImage, RgbImage, FloatMap)> {
    let image = load_image(&rec.image_path, Some(resize))?;
    let recon_path = rec
        .recon_path
        .as_deref()
        .ok_or_else(|| Error::Protocol(format!("{} has no matched reconstruction", rec.key())))?;
    let recon = load_image(recon_path, None)?;
    if recon.dims() != image.dims() {
        return Err(Error::Protocol(format!(
            "reconstruction {} is {}x{}, expected {}x{}",
            recon_path.display(),
            recon.height(),
            recon.width(),
            image.height(),
            image.width()
        )));
    }
    let mask = match &rec.mask_path {
        Some(p) => load_mask(p, Some(resize))?,
        None => FloatMap::zeros(resize.0, resize.1),
    };
    Ok((image, recon, mask))
}

pub(crate) fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    Ok(())
}

fn encode_err(path: &Path, e: image::ImageError) -> Error {
    match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(other.to_string())),
    }
}

pub fn save_rgb(img: &RgbImage, path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let buf: ImageBuffer<Rgb<u8>, _> =
        ImageBuffer::from_raw(img.width() as u32, img.height() as u32, img.as_raw().to_vec())
            .expect("buffer sized from image");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| encode_err(path, e))
}

pub fn save_gray(img: &GrayImage, path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let buf: ImageBuffer<Luma<u8>, _> =
        ImageBuffer::from_raw(img.width() as u32, img.height() as u32, img.as_raw().to_vec())
            .expect("buffer sized from image");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| encode_err(path, e))
}

/// Binary mask as 0/255 grayscale PNG.
pub fn save_mask(mask: &FloatMap, path: &Path) -> Result<()> {
    let data = mask.as_raw().iter().map(|&v| if v > 0.0 { 255 } else { 0 }).collect();
    save_gray(&GrayImage::new(mask.height(), mask.width(), data)?, path)
}

/// All PNG/JPEG files directly inside `dir`, path-sorted.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = Vec::new();
    for entry in rd {
        let p = entry.map_err(|e| Error::io(dir, e))?.path();
        if is_image_file(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Loads a flat directory of texture images, named by file name.
pub fn load_texture_bank(dir: &Path, resize: Option<(usize, usize)>) -> Result<TextureBank> {
    let mut entries = Vec::new();
    for p in list_images(dir)? {
        let name = p.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        entries.push((name, load_image(&p, resize)?));
    }
    Ok(TextureBank::new(entries))
}
