//! Intensity-substitution pan-sharpening.
//!
//! The pipeline: upsample the MS bands to the PAN grid by nearest neighbor,
//! forward-transform RGB to (I, v1, v2), radiometrically match PAN to the
//! variant's own I plane, blend `I_new = alpha * PAN' + beta * I`, inverse
//! transform, and quantize. Only the intensity channel is touched; v1 and v2
//! pass through untouched. The defaults `alpha = 1, beta = 0` reproduce plain
//! intensity replacement.

use rayon::prelude::*;

use crate::colorspace::{forward_with_mode, get_variant, inverse, IhsPlanes, InverseMode, Variant};
use crate::error::{Error, Result};
use crate::preprocess::{match_cdf, match_mean_std, upsample_nearest};
use crate::raster::{FloatPlane, Raster};

/// How the PAN plane is radiometrically aligned to the intensity component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Affine mean/std alignment (what the reference workflow applied).
    MeanStd,
    /// Full CDF (histogram) matching on the given level count.
    Cdf { levels: u32 },
    /// No matching; PAN is substituted as-is.
    None,
}

impl MatchMode {
    pub fn name(self) -> &'static str {
        match self {
            MatchMode::MeanStd => "mean-std",
            MatchMode::Cdf { .. } => "cdf",
            MatchMode::None => "none",
        }
    }
}

/// Full configuration of one fusion run.
#[derive(Debug, Clone)]
pub struct FusionConfig {
    pub variant: Variant,
    pub inverse_mode: InverseMode,
    pub match_mode: MatchMode,
    /// Weight of the matched PAN plane in the intensity blend.
    pub alpha: f64,
    /// Weight of the original intensity in the blend.
    pub beta: f64,
    pub output_bit_depth: u8,
}

impl FusionConfig {
    /// Defaults: corrected inverse, mean/std matching, plain replacement
    /// (alpha 1, beta 0), 8-bit output.
    pub fn new(variant: Variant) -> Self {
        FusionConfig {
            variant,
            inverse_mode: InverseMode::Corrected,
            match_mode: MatchMode::MeanStd,
            alpha: 1.0,
            beta: 0.0,
            output_bit_depth: 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) || !self.alpha.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "alpha must be in [0, 1], got {}",
                self.alpha
            )));
        }
        if !(0.0..=1.0).contains(&self.beta) || !self.beta.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "beta must be in [0, 1], got {}",
                self.beta
            )));
        }
        if !(1..=16).contains(&self.output_bit_depth) {
            return Err(Error::InvalidConfig(format!(
                "output bit depth must be in [1, 16], got {}",
                self.output_bit_depth
            )));
        }
        if matches!(self.match_mode, MatchMode::Cdf { levels } if levels < 2) {
            return Err(Error::InvalidConfig(
                "cdf matching needs at least 2 levels".into(),
            ));
        }
        Ok(())
    }
}

/// Fuse pre-upsampled RGB planes with a PAN plane on the same grid,
/// returning the sharpened float bands before quantization.
pub fn fuse_planes(
    red: &FloatPlane,
    green: &FloatPlane,
    blue: &FloatPlane,
    pan: &FloatPlane,
    cfg: &FusionConfig,
) -> Result<[FloatPlane; 3]> {
    cfg.validate()?;
    for p in [green, blue, pan] {
        if !red.same_dims(p) {
            return Err(Error::DimensionMismatch(format!(
                "fusion planes must share the PAN grid, got {}x{} vs {}x{}",
                red.width(),
                red.height(),
                p.width(),
                p.height()
            )));
        }
    }
    let spec = get_variant(cfg.variant);
    if cfg.inverse_mode == InverseMode::PaperExact && spec.forward.is_singular() {
        return Err(Error::SingularForward {
            variant: cfg.variant,
        });
    }

    let planes = forward_with_mode(&spec, cfg.inverse_mode, red, green, blue)?;
    let matched = match cfg.match_mode {
        MatchMode::MeanStd => match_mean_std(pan, &planes.intensity)?,
        MatchMode::Cdf { levels } => match_cdf(pan, &planes.intensity, levels)?,
        MatchMode::None => pan.clone(),
    };

    let (alpha, beta) = (cfg.alpha, cfg.beta);
    let blended: Vec<f64> = matched
        .values()
        .par_iter()
        .zip(planes.intensity.values().par_iter())
        .with_min_len(4096)
        .map(|(&p, &i)| alpha * p + beta * i)
        .collect();
    let new_intensity = FloatPlane::new(red.width(), red.height(), blended)?;

    // v1/v2 pass through the substitution untouched
    let ihs = IhsPlanes {
        intensity: new_intensity,
        v1: planes.v1,
        v2: planes.v2,
    };
    let (r, g, b) = inverse(&spec, cfg.inverse_mode, &ihs)?;
    Ok([r, g, b])
}

/// Full pipeline from rasters: upsample MS to the PAN grid, fuse, quantize.
/// The output has the PAN dimensions, 3 bands, and `cfg.output_bit_depth`.
pub fn fuse(ms: &Raster, pan: &Raster, cfg: &FusionConfig) -> Result<Raster> {
    cfg.validate()?;
    if ms.bands() != 3 {
        return Err(Error::Usage(format!(
            "MS input must have 3 bands, got {}",
            ms.bands()
        )));
    }
    if pan.bands() != 1 {
        return Err(Error::Usage(format!(
            "PAN input must have 1 band, got {}",
            pan.bands()
        )));
    }
    if pan.width() < ms.width() || pan.height() < ms.height() {
        return Err(Error::DimensionMismatch(format!(
            "PAN {}x{} smaller than MS {}x{}",
            pan.width(),
            pan.height(),
            ms.width(),
            ms.height()
        )));
    }
    let red = upsample_nearest(&ms.band(0)?, pan.width(), pan.height())?;
    let green = upsample_nearest(&ms.band(1)?, pan.width(), pan.height())?;
    let blue = upsample_nearest(&ms.band(2)?, pan.width(), pan.height())?;
    let pan_plane = pan.band(0)?;
    let fused = fuse_planes(&red, &green, &blue, &pan_plane, cfg)?;
    Raster::from_planes(&fused, cfg.output_bit_depth)
}

/// Nearest-upsampled MS at the PAN grid, quantized at the MS bit depth;
/// the reference image for report evaluation.
pub fn upsampled_reference(ms: &Raster, width: u32, height: u32) -> Result<Raster> {
    let planes = [
        upsample_nearest(&ms.band(0)?, width, height)?,
        upsample_nearest(&ms.band(1)?, width, height)?,
        upsample_nearest(&ms.band(2)?, width, height)?,
    ];
    Raster::from_planes(&planes, ms.bit_depth())
}
