use crate::imgcore::FloatMap;

/// 8-connected labeling of a binary mask. Label 0 is background; regions are
/// numbered `1..=count` in row-major order of their first pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub height: usize,
    pub width: usize,
    pub labels: Vec<u32>,
    pub count: usize,
}

impl Components {
    pub fn label(&self, y: usize, x: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    /// Pixel count per region, indexed by `label - 1`.
    pub fn areas(&self) -> Vec<usize> {
        let mut areas = vec![0; self.count];
        for &l in &self.labels {
            if l > 0 {
                areas[l as usize - 1] += 1;
            }
        }
        areas
    }
}

/// Pixels with a value > 0 are foreground.
pub fn connected_components(mask: &FloatMap) -> Components {
    let (h, w) = mask.dims();
    let fg = mask.as_raw();
    let mut labels = vec![0u32; h * w];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..h * w {
        if fg[start] <= 0.0 || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (y, x) = (i / w, i % w);
            for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                    let j = ny * w + nx;
                    if fg[j] > 0.0 && labels[j] == 0 {
                        labels[j] = count;
                        stack.push(j);
                    }
                }
            }
        }
    }
    Components {
        height: h,
        width: w,
        labels,
        count: count as usize,
    }
}
