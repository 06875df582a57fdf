mod edge;
mod eval;
mod score;
mod synth;

pub use edge::edge;
pub use eval::eval;
pub use score::{run, score};
pub use synth::synth;

use std::path::Path;

use edgerec::dataset::{scan_dataset, write_run_config, DatasetIndex, RunConfig};
use edgerec::{Error, Result};
use rayon::ThreadPool;

use crate::args::DatasetArgs;

pub const RUN_CONFIG: &str = "run_config.json";

/// A pool of `jobs` workers; `None` uses every logical core.
fn pool(jobs: Option<usize>) -> Result<ThreadPool> {
    if jobs == Some(0) {
        return Err(Error::param("jobs", "must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::param("jobs", e.to_string()))
}

fn scan(data: &DatasetArgs) -> Result<DatasetIndex> {
    let index = scan_dataset(&data.dataset, data.kind, &data.category)?;
    log::info!("indexed {} ({} samples)", index.id(), index.samples.len());
    Ok(index)
}

fn emit_config(cfg: &RunConfig, out: &Path) -> Result<()> {
    write_run_config(cfg, &out.join(RUN_CONFIG))
}
