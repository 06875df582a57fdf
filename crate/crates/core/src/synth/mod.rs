//! Pseudo-anomaly synthesis for denoising training pairs.
//!
//! Two corruption families are gated independently per sample: a texture
//! blended in through a thresholded Perlin mask, and a large CutPaste patch.
//! All randomness flows from explicit `u64` seeds through ChaCha8 streams.

mod blend;
mod config;
mod corrupt;
mod cutpaste;
mod perlin;

pub use blend::{blend_anomaly, TextureBank};
pub use config::CorruptionConfig;
pub use corrupt::{corrupt, derive_seed, training_pair, CorruptionOutcome, TrainingPair};
pub use cutpaste::{cutpaste, CutPaste, Rect, MAX_RECT_RETRIES};
pub use perlin::{perlin_mask, perlin_noise, PerlinField};
