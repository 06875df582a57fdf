use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::image_io::{ensure_parent, save_gray};
use crate::error::{Error, Result};
use crate::imgcore::{quantize_u8, FloatMap, GrayImage};
use crate::metrics::{EvalReport, DEFAULT_FPR_LIMIT};
use crate::score::ScoreConfig;
use crate::synth::CorruptionConfig;

/// Locations a run reads from and writes to. Not part of the config hash.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunPaths {
    pub dataset: Option<PathBuf>,
    pub recon: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub textures: Option<PathBuf>,
    pub maps: Option<PathBuf>,
}

/// Everything that determines a run's numeric output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `(height, width)` every image is resized to before processing.
    pub resize: (usize, usize),
    pub score: ScoreConfig,
    pub corruption: CorruptionConfig,
    pub seed: u64,
    pub fpr_limit: f64,
    /// Rotation range in degrees applied to training sources before corruption.
    pub rotate: Option<(f64, f64)>,
    pub heatmap: HeatmapNorm,
    pub paths: RunPaths,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            resize: (256, 256),
            score: ScoreConfig::default(),
            corruption: CorruptionConfig::default(),
            seed: 0,
            fpr_limit: DEFAULT_FPR_LIMIT,
            rotate: None,
            heatmap: HeatmapNorm::PerImage,
            paths: RunPaths::default(),
        }
    }
}

#[derive(Serialize)]
struct HashedFields<'a> {
    resize: (usize, usize),
    score: &'a ScoreConfig,
    corruption: &'a CorruptionConfig,
    seed: u64,
    fpr_limit: f64,
    rotate: Option<(f64, f64)>,
    heatmap: HeatmapNorm,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resize.0 == 0 || self.resize.1 == 0 {
            return Err(Error::param("resize", "dimensions must be positive"));
        }
        if !(self.fpr_limit > 0.0 && self.fpr_limit <= 1.0) {
            return Err(Error::param("fpr_limit", "must lie in (0, 1]"));
        }
        if let Some((lo, hi)) = self.rotate {
            if !(lo <= hi && lo.is_finite() && hi.is_finite()) {
                return Err(Error::param("rotate", format!("empty rotation range [{lo}, {hi}]")));
            }
        }
        if let HeatmapNorm::Fixed { lo, hi } = self.heatmap {
            if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                return Err(Error::param("heatmap", format!("fixed range [{lo}, {hi}] is empty")));
            }
        }
        self.score.validate()?;
        self.corruption.validate()
    }

    /// SHA-256 over the canonical JSON of the numeric settings.
    pub fn config_hash(&self) -> String {
        let fields = HashedFields {
            resize: self.resize,
            score: &self.score,
            corruption: &self.corruption,
            seed: self.seed,
            fpr_limit: self.fpr_limit,
            rotate: self.rotate,
            heatmap: self.heatmap,
        };
        let json = serde_json::to_vec(&fields).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }

    /// Conventions recorded alongside results.
    pub fn notes(&self) -> BTreeMap<String, String> {
        let mut n = BTreeMap::new();
        let (h, w) = self.resize;
        n.insert(
            "resize".into(),
            format!("bilinear to {h}x{w}, aspect not preserved; masks nearest-neighbor"),
        );
        n.insert("pixel_metrics".into(), "pixels pooled across all test images".into());
        n.insert("aupro_fpr".into(), "negatives pooled across all test images".into());
        n.insert("color_term".into(), "wide arithmetic, no uint8 saturation".into());
        n.insert("image_score".into(), "maximum of the fused map".into());
        n
    }
}

/// Reads a JSON config file; absent fields take defaults.
pub fn read_run_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Serialize)]
struct RunConfigFile<'a> {
    config_hash: String,
    #[serde(flatten)]
    config: &'a RunConfig,
    notes: BTreeMap<String, String>,
}

pub fn write_run_config(cfg: &RunConfig, path: &Path) -> Result<()> {
    let file = RunConfigFile {
        config_hash: cfg.config_hash(),
        config: cfg,
        notes: cfg.notes(),
    };
    write_json(&file, path)
}

pub(crate) fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum HeatmapNorm {
    /// Map the image's own `[min, max]` onto `[0, 255]`; a flat map is black.
    PerImage,
    /// Map a fixed `[lo, hi]` onto `[0, 255]`, clamping outside it.
    Fixed { lo: f64, hi: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatmapSidecar {
    pub normalization: HeatmapNorm,
    pub lo: f64,
    pub hi: f64,
    pub config_hash: Option<String>,
}

/// Sidecar location for a heatmap: same path with a `.json` extension.
pub fn heatmap_sidecar_path(png: &Path) -> PathBuf {
    png.with_extension("json")
}

/// Writes an 8-bit grayscale PNG of `map` and a JSON sidecar recording the
/// normalization that produced it.
pub fn write_heatmap(map: &FloatMap, path: &Path, norm: HeatmapNorm, config_hash: Option<&str>) -> Result<()> {
    let (lo, hi) = match norm {
        HeatmapNorm::PerImage => (f64::from(map.min()), f64::from(map.max())),
        HeatmapNorm::Fixed { lo, hi } => (lo, hi),
    };
    let data = map
        .as_raw()
        .iter()
        .map(|&v| {
            if hi > lo {
                quantize_u8((f64::from(v) - lo) / (hi - lo) * 255.0)
            } else {
                0
            }
        })
        .collect();
    save_gray(&GrayImage::new(map.height(), map.width(), data)?, path)?;
    write_json(
        &HeatmapSidecar {
            normalization: norm,
            lo,
            hi,
            config_hash: config_hash.map(String::from),
        },
        &heatmap_sidecar_path(path),
    )
}

pub const REPORT_JSON: &str = "report.json";
pub const REPORT_CSV: &str = "report.csv";

/// Writes `report.json` and `report.csv` (one row per category) into `dir`.
pub fn write_report(report: &EvalReport, dir: &Path) -> Result<()> {
    write_json(report, &dir.join(REPORT_JSON))?;
    let csv_path = dir.join(REPORT_CSV);
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| csv_err(&csv_path, e))?;
    w.write_record(["category", "image_auroc", "pixel_auroc", "pixel_ap", "aupro"])
        .map_err(|e| csv_err(&csv_path, e))?;
    for c in &report.categories {
        w.write_record([
            c.category.clone(),
            c.image_auroc.to_string(),
            c.pixel_auroc.to_string(),
            c.pixel_ap.to_string(),
            c.aupro.to_string(),
        ])
        .map_err(|e| csv_err(&csv_path, e))?;
    }
    w.flush().map_err(|e| Error::io(&csv_path, e))
}

pub fn read_report(dir: &Path) -> Result<EvalReport> {
    let p = dir.join(REPORT_JSON);
    let text = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::io(path, std::io::Error::other(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub stem: String,
    pub defect_kind: String,
    pub image_score: f64,
}

pub const SCORES_CSV: &str = "scores.csv";

pub fn write_scores(rows: &[ScoreRow], path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_scores(path: &Path) -> Result<Vec<ScoreRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<ScoreRow>, _>>()
        .map_err(|e| csv_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{CategoryReport, RunMetadata};

    #[test]
    fn flat_map_per_image_is_black() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("h.png");
        write_heatmap(&FloatMap::zeros(8, 8), &p, HeatmapNorm::PerImage, Some("abc")).unwrap();
        let img = image::open(&p).unwrap().into_luma8();
        assert!(img.as_raw().iter().all(|&v| v == 0));
        let side: HeatmapSidecar =
            serde_json::from_str(&fs::read_to_string(heatmap_sidecar_path(&p)).unwrap()).unwrap();
        assert_eq!(side.normalization, HeatmapNorm::PerImage);
        assert_eq!(side.config_hash.as_deref(), Some("abc"));
    }

    #[test]
    fn fixed_range_clamps() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("h.png");
        let m = FloatMap::new(1, 3, vec![-1.0, 0.5, 9.0]).unwrap();
        write_heatmap(&m, &p, HeatmapNorm::Fixed { lo: 0.0, hi: 1.0 }, None).unwrap();
        let img = image::open(&p).unwrap().into_luma8();
        assert_eq!(img.as_raw(), &[0, 128, 255]);
    }

    #[test]
    fn report_files() {
        let dir = tempfile::tempdir().unwrap();
        let rows: Vec<_> = ["bottle", "cable", "zipper"]
            .iter()
            .map(|c| CategoryReport {
                category: c.to_string(),
                image_auroc: 0.9,
                pixel_auroc: 0.8,
                pixel_ap: 0.4,
                aupro: 0.7,
            })
            .collect();
        let report = EvalReport::new(rows, RunMetadata::default());
        write_report(&report, dir.path()).unwrap();
        assert_eq!(read_report(dir.path()).unwrap(), report);
        let csv = fs::read_to_string(dir.path().join(REPORT_CSV)).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "category,image_auroc,pixel_auroc,pixel_ap,aupro");
    }

    #[test]
    fn config_hash_ignores_paths_but_not_parameters() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.paths.out = Some("/elsewhere".into());
        assert_eq!(a.config_hash(), b.config_hash());
        b.score.c = 2e-3;
        assert_ne!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 64);
    }

    #[test]
    fn config_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cfg.json");
        fs::write(&p, r#"{"seed": 9, "score": {"c": 0.01}}"#).unwrap();
        let cfg = read_run_config(&p).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.score.c, 0.01);
        assert_eq!(cfg.score.structure_kernel, 21);
        fs::write(&p, r#"{"sede": 9}"#).unwrap();
        assert!(read_run_config(&p).is_err());
    }

    #[test]
    fn scores_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join(SCORES_CSV);
        let rows = vec![
            ScoreRow { stem: "000".into(), defect_kind: "crack".into(), image_score: 0.25 },
            ScoreRow { stem: "001".into(), defect_kind: "good".into(), image_score: 0.0 },
        ];
        write_scores(&rows, &p).unwrap();
        assert_eq!(read_scores(&p).unwrap(), rows);
        assert!(fs::read_to_string(&p).unwrap().starts_with("stem,defect_kind,image_score\n"));
    }
}
