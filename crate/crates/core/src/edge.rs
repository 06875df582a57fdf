//! Grayscale morphological edges: the input representation of the reconstructor.

use crate::imgcore::{dilate3, erode3, to_grayscale, GrayImage, RgbImage};

/// `dilate3(gray) - erode3(gray)`, never negative.
pub fn morphological_edge(gray: &GrayImage) -> GrayImage {
    let d = dilate3(gray);
    let e = erode3(gray);
    let data = d
        .as_raw()
        .iter()
        .zip(e.as_raw())
        .map(|(&hi, &lo)| hi - lo)
        .collect();
    GrayImage::new(gray.height(), gray.width(), data).expect("dimensions carried over")
}

/// RGB image → grayscale → morphological edge.
pub fn edge_pipeline(img: &RgbImage) -> GrayImage {
    morphological_edge(&to_grayscale(img))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_has_no_edges() {
        assert!(morphological_edge(&GrayImage::filled(6, 6, 140))
            .as_raw()
            .iter()
            .all(|&v| v == 0));
        assert!(edge_pipeline(&RgbImage::filled(6, 6, [10, 200, 30]))
            .as_raw()
            .iter()
            .all(|&v| v == 0));
    }

    #[test]
    fn single_pixel_lights_its_block() {
        let mut g = GrayImage::filled(7, 7, 0);
        g.set(3, 3, 255);
        let e = morphological_edge(&g);
        for y in 0..7 {
            for x in 0..7 {
                let inside = (2..=4).contains(&y) && (2..=4).contains(&x);
                assert_eq!(e.get(y, x), if inside { 255 } else { 0 }, "({y},{x})");
            }
        }
    }

    #[test]
    fn vertical_step_gives_two_pixel_band() {
        let g = GrayImage::from_fn(6, 8, |_, x| if x < 4 { 0 } else { 255 });
        let e = morphological_edge(&g);
        for y in 0..6 {
            for x in 0..8 {
                let band = x == 3 || x == 4;
                assert_eq!(e.get(y, x), if band { 255 } else { 0 });
            }
        }
    }

    #[test]
    fn checkerboard_is_all_edge() {
        let img = RgbImage::from_fn(8, 8, |y, x| if (x + y) % 2 == 0 { [0; 3] } else { [255; 3] });
        assert!(edge_pipeline(&img).as_raw().iter().all(|&v| v == 255));
    }

    #[test]
    fn gray_rgb_matches_direct_path() {
        let img = RgbImage::from_fn(9, 7, |y, x| {
            let v = ((y * 31 + x * 17) % 256) as u8;
            [v, v, v]
        });
        let gray = GrayImage::from_fn(9, 7, |y, x| ((y * 31 + x * 17) % 256) as u8);
        assert_eq!(edge_pipeline(&img), morphological_edge(&gray));
    }

    fn arb_gray() -> impl Strategy<Value = GrayImage> {
        (1usize..10, 1usize..10).prop_flat_map(|(h, w)| {
            proptest::collection::vec(0u8..=200, h * w)
                .prop_map(move |d| GrayImage::new(h, w, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn zero_exactly_on_flat_neighborhoods(g in arb_gray()) {
            let e = morphological_edge(&g);
            let (h, w) = g.dims();
            for y in 0..h {
                for x in 0..w {
                    let mut flat = true;
                    for yy in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                        for xx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                            flat &= g.get(yy, xx) == g.get(y, x);
                        }
                    }
                    prop_assert_eq!(e.get(y, x) == 0, flat);
                }
            }
        }

        #[test]
        fn invariant_to_unclipped_offset(g in arb_gray(), t in 0u8..=55) {
            let shifted = GrayImage::from_fn(g.height(), g.width(), |y, x| g.get(y, x) + t);
            prop_assert_eq!(morphological_edge(&shifted), morphological_edge(&g));
        }
    }
}
