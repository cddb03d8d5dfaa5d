//! IHS-family pan-sharpening toolkit.
//!
//! The crate provides:
//! - a planar integer [`Raster`] model with bit-exact Netpbm I/O,
//! - a registry of ten RGB-to-intensity transform variants
//!   (`hsv`, `ihs1`..`ihs7`, `hls`, `yiq`) with forward and inverse
//!   matrices as printed in their sources plus numerically corrected
//!   inverses,
//! - the intensity-substitution fusion pipeline with mean/std or CDF
//!   radiometric matching and an alpha/beta intensity blend,
//! - the six per-band quality indices (SD, En, CC, SNR, NRMSE, DI),
//! - a deterministic seeded synthetic-scene generator for desk-scale
//!   experiments.
//!
//! All operations are pure functions of their inputs; identical inputs and
//! configuration yield bit-identical outputs regardless of thread count.

pub mod colorspace;
pub mod error;
pub mod fusion;
pub mod mat3;
pub mod metrics;
pub mod netpbm;
pub mod preprocess;
pub mod raster;
pub mod synth;

pub use colorspace::{
    consistency_report, get_variant, get_variant_by_name, ConsistencyRow, IhsPlanes, InverseMode,
    TransformSpec, Variant,
};
pub use error::{Error, Result};
pub use fusion::{fuse, fuse_planes, upsampled_reference, FusionConfig, MatchMode};
pub use metrics::{evaluate, MetricValue, MetricsReport};
pub use netpbm::{decode_netpbm, encode_netpbm, Format};
pub use raster::{quantize, FloatPlane, Raster};
pub use synth::{generate_scene, SplitMix64, SynthScene};
