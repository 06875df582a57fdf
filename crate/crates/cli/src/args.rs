use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use edgerec::dataset::{DatasetKind, HeatmapNorm};
use edgerec::score::ScoreFunction;

#[derive(Debug, Parser)]
#[command(name = "edgerec", version, about = "Edge-reconstruction anomaly detection pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write corrupted-edge / clean-target / mask training triples.
    Synth(SynthArgs),
    /// Mirror a directory tree of images as grayscale morphological edges.
    Edge(EdgeArgs),
    /// Score test images against their reconstructions.
    Score(ScoreArgs),
    /// Compute image and pixel metrics from saved maps.
    Eval(EvalArgs),
    /// `score` followed by `eval` into one output directory.
    Run(RunArgs),
}

/// Settings that feed the hashed run configuration. Any flag given here
/// overrides the `--config` file, which overrides the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: logical cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Target size as `N` or `HxW`.
    #[arg(long, value_parser = parse_size)]
    pub resize: Option<(usize, usize)>,

    /// Weight of the color term.
    #[arg(long = "c")]
    pub c: Option<f64>,
    #[arg(long)]
    pub color_kernel: Option<usize>,
    #[arg(long)]
    pub structure_kernel: Option<usize>,
    #[arg(long)]
    pub pyramid_levels: Option<usize>,
    #[arg(long)]
    pub gms_constant: Option<f64>,
    /// fused | msgms | color | l2 | ssim
    #[arg(long = "score-function")]
    pub function: Option<ScoreFunction>,
    /// `per-image` or `fixed:LO,HI`.
    #[arg(long, value_parser = parse_norm)]
    pub heatmap_norm: Option<HeatmapNorm>,
    #[arg(long)]
    pub fpr_limit: Option<f64>,

    #[arg(long)]
    pub p_texture: Option<f64>,
    #[arg(long)]
    pub p_cutpaste: Option<f64>,
    /// Blend opacity range `LO,HI`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub beta_range: Option<(f64, f64)>,
    /// Comma-separated exponents k of the Perlin lattice period 2^k.
    #[arg(long, value_delimiter = ',')]
    pub perlin_exponents: Option<Vec<u32>>,
    #[arg(long)]
    pub perlin_threshold: Option<f64>,
    /// CutPaste area fraction range `LO,HI`.
    #[arg(long, value_parser = parse_range)]
    pub cutpaste_area: Option<(f64, f64)>,
    /// CutPaste aspect ratio range `LO,HI`.
    #[arg(long, value_parser = parse_range)]
    pub cutpaste_aspect: Option<(f64, f64)>,
    /// Rotation range in degrees `LO,HI` applied to synth sources.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub rotate: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Args)]
pub struct DatasetArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// mvtec-ad | mvtec-3d-rgb
    #[arg(long, default_value = "mvtec-ad")]
    pub kind: DatasetKind,
    #[arg(long)]
    pub category: String,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub data: DatasetArgs,
    /// Directory of texture images for blending.
    #[arg(long)]
    pub textures: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub count: usize,
    #[command(flatten)]
    pub cfg: ConfigFlags,
}

#[derive(Debug, Clone, Args)]
pub struct EdgeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub cfg: ConfigFlags,
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub data: DatasetArgs,
    #[arg(long)]
    pub recon: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub cfg: ConfigFlags,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Directory holding `<defect>/<stem>.pfm`.
    #[arg(long)]
    pub maps: PathBuf,
    #[command(flatten)]
    pub data: DatasetArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub cfg: ConfigFlags,
}

pub type RunArgs = ScoreArgs;

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once(['x', 'X']) {
        Some((h, w)) => Ok((parse(h)?, parse(w)?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

fn parse_norm(s: &str) -> Result<HeatmapNorm, String> {
    if s == "per-image" {
        return Ok(HeatmapNorm::PerImage);
    }
    match s.strip_prefix("fixed:") {
        Some(r) => {
            let (lo, hi) = parse_range(r)?;
            Ok(HeatmapNorm::Fixed { lo, hi })
        }
        None => Err(format!("expected `per-image` or `fixed:LO,HI`, got `{s}`")),
    }
}
