use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which evaluation function turns an (original, reconstruction) pair into
/// an anomaly map. `Fused` is the default; the others exist for ablations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreFunction {
    /// `c · color + structure`
    #[default]
    Fused,
    /// Structure term only (`1 - mean(MSGMS)`).
    Msgms,
    /// Chroma term only.
    Color,
    /// Per-pixel squared error.
    L2,
    /// `1 - SSIM` on a full-size map.
    Ssim,
}

impl std::str::FromStr for ScoreFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fused" | "msgms+color" => Ok(Self::Fused),
            "msgms" => Ok(Self::Msgms),
            "color" => Ok(Self::Color),
            "l2" => Ok(Self::L2),
            "ssim" => Ok(Self::Ssim),
            other => Err(Error::param("function", format!("unknown score function `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScoreConfig {
    /// Weight of the color term in the fused map.
    pub c: f64,
    pub color_kernel: usize,
    pub structure_kernel: usize,
    pub pyramid_levels: usize,
    /// GMS stabilizer on the [0, 255] gradient scale.
    pub gms_constant: f64,
    pub function: ScoreFunction,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        Self {
            c: 1e-3,
            color_kernel: 11,
            structure_kernel: 21,
            pyramid_levels: 4,
            gms_constant: 170.0,
            function: ScoreFunction::Fused,
        }
    }
}

impl ScoreConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c >= 0.0 && self.c.is_finite()) {
            return Err(Error::param("c", format!("fusion factor must be finite and non-negative, got {}", self.c)));
        }
        for (name, k) in [("color_kernel", self.color_kernel), ("structure_kernel", self.structure_kernel)] {
            if k == 0 || k % 2 == 0 {
                return Err(Error::param(name, format!("kernel size must be odd and positive, got {k}")));
            }
        }
        if self.pyramid_levels == 0 {
            return Err(Error::param("pyramid_levels", "at least one level is required"));
        }
        if !(self.gms_constant > 0.0 && self.gms_constant.is_finite()) {
            return Err(Error::param("gms_constant", "must be positive"));
        }
        Ok(())
    }
}
