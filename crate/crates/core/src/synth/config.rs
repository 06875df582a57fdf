use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probabilities and ranges driving pseudo-anomaly synthesis.
///
/// Intervals are `[lo, hi]` pairs; an interval with `lo == hi` pins the value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CorruptionConfig {
    pub p_texture: f64,
    pub p_cutpaste: f64,
    pub beta_range: (f64, f64),
    /// Lattice periods are `2^k` for `k` drawn uniformly from this set, per axis.
    pub perlin_scale_exponents: Vec<u32>,
    pub perlin_threshold: f64,
    /// Fraction of the image area covered by the pasted rectangle.
    pub cutpaste_area_range: (f64, f64),
    /// Width / height of the pasted rectangle.
    pub cutpaste_aspect_range: (f64, f64),
}

impl Default for CorruptionConfig {
    fn default() -> Self {
        Self {
            p_texture: 0.5,
            p_cutpaste: 0.3,
            beta_range: (0.1, 1.0),
            perlin_scale_exponents: (0..=5).collect(),
            perlin_threshold: 0.5,
            cutpaste_area_range: (0.05, 0.30),
            cutpaste_aspect_range: (0.3, 3.3),
        }
    }
}

fn check_interval(name: &'static str, (lo, hi): (f64, f64), ok: impl Fn(f64) -> bool) -> Result<()> {
    if lo.is_nan() || hi.is_nan() || lo > hi || !ok(lo) || !ok(hi) {
        return Err(Error::param(name, format!("interval [{lo}, {hi}] is empty or out of bounds")));
    }
    Ok(())
}

impl CorruptionConfig {
    /// No corruption at all: the inference-time preprocessing path.
    pub fn clean() -> Self {
        Self {
            p_texture: 0.0,
            p_cutpaste: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_texture", self.p_texture), ("p_cutpaste", self.p_cutpaste)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(name, format!("probability {p} outside [0, 1]")));
            }
        }
        check_interval("beta_range", self.beta_range, |b| b > 0.0 && b <= 1.0)?;
        if self.perlin_scale_exponents.is_empty() {
            return Err(Error::param("perlin_scale_exponents", "must not be empty"));
        }
        if let Some(k) = self.perlin_scale_exponents.iter().find(|&&k| k > 16) {
            return Err(Error::param("perlin_scale_exponents", format!("exponent {k} is too large")));
        }
        if !(self.perlin_threshold > 0.0 && self.perlin_threshold < 1.0) {
            return Err(Error::param("perlin_threshold", "must lie in (0, 1)"));
        }
        check_interval("cutpaste_area_range", self.cutpaste_area_range, |a| a > 0.0 && a < 1.0)?;
        check_interval("cutpaste_aspect_range", self.cutpaste_aspect_range, |a| {
            a > 0.0 && a.is_finite()
        })?;
        Ok(())
    }
}
