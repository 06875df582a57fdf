//! Dataset indexing, the reconstruction-file protocol, and on-disk formats
//! (PNG images and masks, PFM float maps, reports, run configs).

mod image_io;
mod index;
mod output;
mod pfm;

pub use image_io::{list_images, load_image, load_mask, load_test_sample, load_texture_bank, save_gray, save_mask, save_rgb};
pub use index::{
    match_reconstructions, scan_dataset, verify_reconstruction_dims, DatasetIndex, DatasetKind, ReconMatch, SampleRecord, Split, GOOD,
};
pub use output::{
    heatmap_sidecar_path, read_report, read_run_config, read_scores, write_heatmap, write_report, write_run_config,
    write_scores, HeatmapNorm, HeatmapSidecar, RunConfig, RunPaths, ScoreRow, REPORT_CSV, REPORT_JSON, SCORES_CSV,
};
pub use pfm::{decode_pfm, encode_pfm, read_float_map, write_float_map};
