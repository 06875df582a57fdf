//! WebAssembly bindings for a single static demo page. Images cross the
//! boundary as RGBA bytes (canvas `ImageData` layout); alpha is ignored on
//! input and opaque on output.

use edgerec::edge::edge_pipeline;
use edgerec::imgcore::{FloatMap, GrayImage, RgbImage};
use edgerec::score::{anomaly_map, ScoreConfig};
use edgerec::synth::{corrupt, CorruptionConfig, TextureBank};
use wasm_bindgen::prelude::*;

fn js_err(e: edgerec::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Drops the alpha channel, checking the buffer against the stated size.
pub fn rgba_to_rgb(rgba: &[u8], width: usize, height: usize) -> Result<RgbImage, String> {
    if rgba.len() != width * height * 4 {
        return Err(format!(
            "expected {} RGBA bytes for {width}x{height}, got {}",
            width * height * 4,
            rgba.len()
        ));
    }
    let rgb = rgba.chunks_exact(4).flat_map(|p| [p[0], p[1], p[2]]).collect();
    RgbImage::new(height, width, rgb).map_err(|e| e.to_string())
}

fn from_rgba(rgba: &[u8], width: usize, height: usize) -> Result<RgbImage, JsError> {
    rgba_to_rgb(rgba, width, height).map_err(|e| JsError::new(&e))
}

fn rgb_to_rgba(img: &RgbImage) -> Vec<u8> {
    img.pixels().flat_map(|[r, g, b]| [r, g, b, 255]).collect()
}

fn gray_to_rgba(img: &GrayImage) -> Vec<u8> {
    img.as_raw().iter().flat_map(|&v| [v, v, v, 255]).collect()
}

/// Black-to-yellow ramp over `[0, hi]`.
fn heat_to_rgba(map: &FloatMap, hi: f32) -> Vec<u8> {
    map.as_raw()
        .iter()
        .flat_map(|&v| {
            let t = if hi > 0.0 { (v / hi).clamp(0.0, 1.0) } else { 0.0 };
            let r = (t * 3.0).min(1.0);
            let g = (t * 3.0 - 1.0).clamp(0.0, 1.0);
            let b = (t * 3.0 - 2.0).clamp(0.0, 1.0);
            [(r * 255.0).round() as u8, (g * 255.0).round() as u8, (b * 255.0).round() as u8, 255]
        })
        .collect()
}

/// Grayscale morphological edge of an RGBA image, returned as RGBA.
#[wasm_bindgen]
pub fn edge_rgba(rgba: &[u8], width: usize, height: usize) -> Result<Vec<u8>, JsError> {
    Ok(gray_to_rgba(&edge_pipeline(&from_rgba(rgba, width, height)?)))
}

/// A procedural stripe-and-check texture standing in for a texture bank.
pub fn demo_texture(width: usize, height: usize) -> RgbImage {
    RgbImage::from_fn(height, width, |y, x| {
        let v = ((x * 5 + y * 9) % 48) as u8;
        [230 - v * 3, 40 + v * 4, if (x / 6 + y / 6) % 2 == 0 { 20 } else { 210 }]
    })
}

#[wasm_bindgen]
pub struct Corruption {
    corrupted: Vec<u8>,
    mask: Vec<u8>,
    edge: Vec<u8>,
    coverage: f64,
}

#[wasm_bindgen]
impl Corruption {
    #[wasm_bindgen(getter)]
    pub fn corrupted(&self) -> Vec<u8> {
        self.corrupted.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn mask(&self) -> Vec<u8> {
        self.mask.clone()
    }
    /// Edge of the corrupted image: what the reconstruction network sees.
    #[wasm_bindgen(getter)]
    pub fn edge(&self) -> Vec<u8> {
        self.edge.clone()
    }
    /// Fraction of pixels inside the anomaly mask.
    #[wasm_bindgen(getter)]
    pub fn coverage(&self) -> f64 {
        self.coverage
    }
}

/// Texture blend through a Perlin mask and/or a CutPaste patch.
/// `max_exponent` caps the Perlin lattice period at `2^max_exponent`; a
/// fixed `beta` pins the blend opacity.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn synthesize(
    rgba: &[u8],
    width: usize,
    height: usize,
    seed: u32,
    threshold: f64,
    max_exponent: u32,
    beta: f64,
    texture: bool,
    cutpaste: bool,
) -> Result<Corruption, JsError> {
    let img = from_rgba(rgba, width, height)?;
    let bank = TextureBank::new(vec![("demo".into(), demo_texture(width, height))]);
    let cfg = CorruptionConfig {
        p_texture: if texture { 1.0 } else { 0.0 },
        p_cutpaste: if cutpaste { 1.0 } else { 0.0 },
        beta_range: (beta, beta),
        perlin_scale_exponents: (0..=max_exponent).collect(),
        perlin_threshold: threshold,
        ..CorruptionConfig::default()
    };
    let out = corrupt(&img, &bank, &cfg, u64::from(seed)).map_err(js_err)?;
    let mask_gray = GrayImage::new(
        height,
        width,
        out.mask.as_raw().iter().map(|&v| if v > 0.0 { 255 } else { 0 }).collect(),
    )
    .map_err(js_err)?;
    Ok(Corruption {
        edge: gray_to_rgba(&edge_pipeline(&out.corrupted)),
        corrupted: rgb_to_rgba(&out.corrupted),
        mask: gray_to_rgba(&mask_gray),
        coverage: out.mask.count_positive() as f64 / out.mask.len() as f64,
    })
}

#[wasm_bindgen]
pub struct Heatmap {
    rgba: Vec<u8>,
    score: f64,
    peak: f32,
}

#[wasm_bindgen]
impl Heatmap {
    #[wasm_bindgen(getter)]
    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }
    /// Image-level anomaly score (map maximum).
    #[wasm_bindgen(getter)]
    pub fn score(&self) -> f64 {
        self.score
    }
    /// Value mapped to full brightness.
    #[wasm_bindgen(getter)]
    pub fn peak(&self) -> f32 {
        self.peak
    }
}

/// Fused color + structure anomaly map of `image` against `recon`, with
/// color weight `c`. `range` fixes the display maximum; `0` means use the
/// map's own maximum.
#[wasm_bindgen]
pub fn anomaly_heatmap(
    image: &[u8],
    recon: &[u8],
    width: usize,
    height: usize,
    c: f64,
    range: f32,
) -> Result<Heatmap, JsError> {
    let img = from_rgba(image, width, height)?;
    let rec = from_rgba(recon, width, height)?;
    let cfg = ScoreConfig {
        c,
        ..ScoreConfig::default()
    };
    let m = anomaly_map(&img, &rec, &cfg).map_err(js_err)?;
    let peak = if range > 0.0 { range } else { m.map.max() };
    Ok(Heatmap {
        rgba: heat_to_rgba(&m.map, peak),
        score: m.image_score,
        peak,
    })
}
