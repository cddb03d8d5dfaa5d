use thiserror::Error;

use crate::colorspace::Variant;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by raster I/O, transforms, and the fusion pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed, out-of-range, or truncated Netpbm input.
    #[error("decode error at byte {offset}: {detail}")]
    Decode { offset: usize, detail: String },

    /// API misuse: invalid construction arguments or format/band mismatch.
    #[error("{0}")]
    Usage(String),

    /// Operands do not share the required dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Band index outside the raster's band count.
    #[error("band index {index} out of range for {bands}-band raster")]
    BandOutOfRange { index: usize, bands: u8 },

    /// A non-finite value reached a stage that requires finite input.
    #[error("non-finite value at pixel index {index}")]
    NonFinite { index: usize },

    /// Input too degenerate to process (e.g. constant plane where a spread is needed).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Paper-exact fusion requested for a variant whose forward matrix is singular.
    #[error("singular forward matrix for variant {variant} in paper-exact mode")]
    SingularForward { variant: Variant },

    /// Neither the forward matrix nor the printed inverse is invertible.
    #[error("variant {variant} unusable: forward and printed inverse are both singular")]
    VariantUnusable { variant: Variant },

    /// Variant name not in the registry.
    #[error("unknown variant {0:?}")]
    UnknownVariant(String),

    /// Invalid configuration value.
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
