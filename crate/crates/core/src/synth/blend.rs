use crate::error::{ensure_same_dims, Error, Result};
use crate::imgcore::{quantize_u8, FloatMap, RgbImage};

/// Named texture sources for pseudo-anomaly blending, kept in name order.
#[derive(Clone, Debug, Default)]
pub struct TextureBank {
    entries: Vec<(String, RgbImage)>,
}

impl TextureBank {
    pub fn new(mut entries: Vec<(String, RgbImage)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Self { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<(&str, &RgbImage)> {
        self.entries.get(index).map(|(n, i)| (n.as_str(), i))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}

/// Opacity blend of `texture` into `img` inside `mask`.
///
/// Inside the mask each channel becomes `round((1-β)·img + β·texture)`;
/// outside it the source pixel is copied unchanged.
pub fn blend_anomaly(img: &RgbImage, texture: &RgbImage, mask: &FloatMap, beta: f64) -> Result<RgbImage> {
    ensure_same_dims(img.dims(), texture.dims())?;
    ensure_same_dims(img.dims(), mask.dims())?;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param("beta", format!("opacity must lie in (0, 1], got {beta}")));
    }
    let mut out = img.clone();
    let (h, w) = img.dims();
    for y in 0..h {
        for x in 0..w {
            if mask.get(y, x) > 0.0 {
                let a = img.pixel(y, x);
                let t = texture.pixel(y, x);
                let mixed = std::array::from_fn(|c| {
                    quantize_u8((1.0 - beta) * f64::from(a[c]) + beta * f64::from(t[c]))
                });
                out.put_pixel(y, x, mixed);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_mask_is_identity() {
        let img = RgbImage::from_fn(4, 4, |y, x| [y as u8, x as u8, 1]);
        let tex = RgbImage::filled(4, 4, [200, 0, 100]);
        let out = blend_anomaly(&img, &tex, &FloatMap::zeros(4, 4), 0.7).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn full_opacity_full_mask_is_texture() {
        let img = RgbImage::from_fn(4, 4, |y, x| [y as u8, x as u8, 1]);
        let tex = RgbImage::from_fn(4, 4, |y, x| [x as u8 * 9, 3, y as u8 * 5]);
        let out = blend_anomaly(&img, &tex, &FloatMap::filled(4, 4, 1.0), 1.0).unwrap();
        assert_eq!(out, tex);
    }

    #[test]
    fn half_opacity_averages() {
        let img = RgbImage::filled(2, 2, [100, 100, 100]);
        let tex = RgbImage::filled(2, 2, [200, 0, 100]);
        let mut mask = FloatMap::zeros(2, 2);
        mask.set(1, 0, 1.0);
        let out = blend_anomaly(&img, &tex, &mask, 0.5).unwrap();
        assert_eq!(out.pixel(1, 0), [150, 50, 100]);
        assert_eq!(out.pixel(0, 0), [100, 100, 100]);
    }

    #[test]
    fn rejects_mismatch_and_bad_beta() {
        let img = RgbImage::filled(2, 2, [0; 3]);
        let tex = RgbImage::filled(2, 3, [0; 3]);
        assert!(blend_anomaly(&img, &tex, &FloatMap::zeros(2, 2), 0.5).is_err());
        assert!(blend_anomaly(&img, &img, &FloatMap::zeros(2, 2), 0.0).is_err());
    }

    #[test]
    fn bank_sorted_by_name() {
        let bank = TextureBank::new(vec![
            ("zebra".into(), RgbImage::filled(1, 1, [0; 3])),
            ("alpha".into(), RgbImage::filled(1, 1, [1; 3])),
        ]);
        assert_eq!(bank.names().collect::<Vec<_>>(), ["alpha", "zebra"]);
        assert_eq!(bank.get(0).unwrap().1.pixel(0, 0), [1; 3]);
    }
}
