use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directory name of normal samples in both layouts.
pub const GOOD: &str = "good";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DatasetKind {
    /// `<cat>/{train,test}/<defect>/*.png`, masks in `<cat>/ground_truth/<defect>/<stem>_mask.png`.
    #[serde(rename = "mvtec-ad")]
    MvtecAd,
    /// `<cat>/{train,test}/<defect>/rgb/*.png`, masks in `<defect>/gt/<stem>.png`.
    #[serde(rename = "mvtec-3d-rgb")]
    Mvtec3dRgb,
}

impl fmt::Display for DatasetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetKind::MvtecAd => "mvtec-ad",
            DatasetKind::Mvtec3dRgb => "mvtec-3d-rgb",
        })
    }
}

impl FromStr for DatasetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mvtec-ad" | "mvtec" => Ok(DatasetKind::MvtecAd),
            "mvtec-3d-rgb" | "mvtec-3d" | "mvtec3d" => Ok(DatasetKind::Mvtec3dRgb),
            other => Err(Error::param("kind", format!("unknown dataset kind `{other}`"))),
        }
    }
}

/// Ordered lexicographically by directory name, so `test` sorts before `train`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Test,
    Train,
}

impl Split {
    pub fn dir_name(self) -> &'static str {
        match self {
            Split::Test => "test",
            Split::Train => "train",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub category: String,
    pub split: Split,
    pub defect_kind: String,
    pub image_path: PathBuf,
    pub mask_path: Option<PathBuf>,
    pub recon_path: Option<PathBuf>,
    pub stem: String,
}

impl SampleRecord {
    pub fn is_anomalous(&self) -> bool {
        self.defect_kind != GOOD
    }

    /// `<defect>/<stem>`, the key used by every per-sample artifact.
    pub fn key(&self) -> String {
        format!("{}/{}", self.defect_kind, self.stem)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetIndex {
    pub kind: DatasetKind,
    pub root: PathBuf,
    pub category: String,
    pub samples: Vec<SampleRecord>,
}

impl DatasetIndex {
    pub fn split(&self, split: Split) -> impl Iterator<Item = &SampleRecord> {
        self.samples.iter().filter(move |s| s.split == split)
    }

    pub fn test(&self) -> impl Iterator<Item = &SampleRecord> {
        self.split(Split::Test)
    }

    pub fn train(&self) -> impl Iterator<Item = &SampleRecord> {
        self.split(Split::Train)
    }

    /// Short identifier recorded in reports.
    pub fn id(&self) -> String {
        format!("{}:{}", self.kind, self.category)
    }
}

pub(crate) fn is_image_file(p: &Path) -> bool {
    p.is_file()
        && p.extension()
            .and_then(|e| e.to_str())
            .map(|e| matches!(e.to_ascii_lowercase().as_str(), "png" | "jpg" | "jpeg"))
            .unwrap_or(false)
}

fn layout_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Layout {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = Vec::new();
    for entry in rd {
        out.push(entry.map_err(|e| Error::io(dir, e))?.path());
    }
    out.sort();
    Ok(out)
}

fn subdirs(dir: &Path) -> Result<Vec<String>> {
    if !dir.is_dir() {
        return Err(layout_err(dir, "missing directory"));
    }
    Ok(sorted_entries(dir)?
        .into_iter()
        .filter(|p| p.is_dir())
        .filter_map(|p| p.file_name().and_then(|n| n.to_str()).map(String::from))
        .collect())
}

fn images_in(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    if !dir.is_dir() {
        return Err(layout_err(dir, "missing image directory"));
    }
    let mut out: Vec<_> = sorted_entries(dir)?
        .into_iter()
        .filter(|p| is_image_file(p))
        .filter_map(|p| {
            let stem = p.file_stem()?.to_str()?.to_string();
            Some((stem, p))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Indexes one category of an MVTec-style tree.
///
/// Records are sorted by `(split, defect_kind, stem)`. Every non-good test
/// image must have a mask; good test images have none and count as all
/// negative.
pub fn scan_dataset(root: &Path, kind: DatasetKind, category: &str) -> Result<DatasetIndex> {
    if !root.is_dir() {
        return Err(layout_err(root, "dataset root does not exist"));
    }
    let cat_dir = root.join(category);
    if !cat_dir.is_dir() {
        return Err(layout_err(&cat_dir, "category directory does not exist"));
    }
    let mut samples = Vec::new();
    for split in [Split::Train, Split::Test] {
        let split_dir = cat_dir.join(split.dir_name());
        let defects = subdirs(&split_dir)?;
        if split == Split::Train && !defects.iter().any(|d| d == GOOD) {
            return Err(layout_err(&split_dir.join(GOOD), "missing training directory"));
        }
        let mut split_count = 0;
        for defect in defects {
            if split == Split::Train && defect != GOOD {
                continue;
            }
            let defect_dir = split_dir.join(&defect);
            let image_dir = match kind {
                DatasetKind::MvtecAd => defect_dir.clone(),
                DatasetKind::Mvtec3dRgb => defect_dir.join("rgb"),
            };
            for (stem, image_path) in images_in(&image_dir)? {
                let mask_path = if split == Split::Test && defect != GOOD {
                    let candidates = match kind {
                        DatasetKind::MvtecAd => {
                            let gt = cat_dir.join("ground_truth").join(&defect);
                            vec![gt.join(format!("{stem}_mask.png")), gt.join(format!("{stem}.png"))]
                        }
                        DatasetKind::Mvtec3dRgb => vec![defect_dir.join("gt").join(format!("{stem}.png"))],
                    };
                    match candidates.iter().find(|p| p.is_file()) {
                        Some(p) => Some(p.clone()),
                        None => {
                            return Err(layout_err(
                                &image_path,
                                format!("no ground-truth mask (looked for {})", candidates[0].display()),
                            ))
                        }
                    }
                } else {
                    None
                };
                samples.push(SampleRecord {
                    category: category.to_string(),
                    split,
                    defect_kind: defect.clone(),
                    image_path,
                    mask_path,
                    recon_path: None,
                    stem,
                });
                split_count += 1;
            }
        }
        if split_count == 0 {
            return Err(layout_err(&split_dir, format!("no images in the {} split", split.dir_name())));
        }
    }
    samples.sort_by(|a, b| {
        (a.split, &a.defect_kind, &a.stem).cmp(&(b.split, &b.defect_kind, &b.stem))
    });
    Ok(DatasetIndex {
        kind,
        root: root.to_path_buf(),
        category: category.to_string(),
        samples,
    })
}

/// Result of pairing test samples with reconstruction files.
#[derive(Clone, Debug)]
pub struct ReconMatch {
    pub index: DatasetIndex,
    /// Files under the reconstruction directory no test sample claimed.
    pub extra_files: Vec<PathBuf>,
}

/// Attaches `<recon_dir>/<defect_kind>/<stem>.png` to every test record.
///
/// Missing files are an error listing every missing key; unclaimed files are
/// reported back (and logged) but accepted.
pub fn match_reconstructions(index: &DatasetIndex, recon_dir: &Path) -> Result<ReconMatch> {
    if !recon_dir.is_dir() {
        return Err(Error::Protocol(format!(
            "reconstruction directory {} does not exist",
            recon_dir.display()
        )));
    }
    let mut out = index.clone();
    let mut missing = Vec::new();
    let mut claimed = BTreeSet::new();
    for rec in out.samples.iter_mut().filter(|s| s.split == Split::Test) {
        let p = recon_dir.join(&rec.defect_kind).join(format!("{}.png", rec.stem));
        if p.is_file() {
            claimed.insert(p.clone());
            rec.recon_path = Some(p);
        } else {
            missing.push(rec.key());
        }
    }
    if !missing.is_empty() {
        return Err(Error::Protocol(format!(
            "{} reconstruction(s) missing under {}: {}",
            missing.len(),
            recon_dir.display(),
            missing.join(", ")
        )));
    }
    let mut extra_files = Vec::new();
    for defect_dir in sorted_entries(recon_dir)?.into_iter().filter(|p| p.is_dir()) {
        for f in sorted_entries(&defect_dir)? {
            if f.is_file() && !claimed.contains(&f) {
                log::warn!("unclaimed reconstruction file {}", f.display());
                extra_files.push(f);
            }
        }
    }
    Ok(ReconMatch {
        index: out,
        extra_files,
    })
}

/// Checks every matched reconstruction's header dimensions against the
/// resize target without decoding pixel data.
pub fn verify_reconstruction_dims(index: &DatasetIndex, resize: (usize, usize)) -> Result<()> {
    let mut bad = Vec::new();
    for rec in index.test() {
        let Some(p) = &rec.recon_path else {
            bad.push(format!("{} (unmatched)", rec.key()));
            continue;
        };
        match image::image_dimensions(p) {
            Ok((w, h)) if (h as usize, w as usize) == resize => {}
            Ok((w, h)) => bad.push(format!("{} is {h}x{w}", rec.key())),
            Err(e) => {
                return Err(Error::Decode {
                    path: p.clone(),
                    reason: e.to_string(),
                })
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Protocol(format!(
            "reconstructions must be {}x{}: {}",
            resize.0,
            resize.1,
            bad.join(", ")
        )))
    }
}
