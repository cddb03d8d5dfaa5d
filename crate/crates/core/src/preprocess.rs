//! Resampling and radiometric matching applied before intensity substitution.
//!
//! Nearest-neighbor upsampling copies values exactly (no interpolation, so
//! no spectral mixing); matching aligns the PAN plane to the intensity
//! component either by mean/std or by full CDF mapping.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::raster::FloatPlane;

/// Nearest-neighbor upsampling with origin-aligned floor index mapping:
/// `out(x, y) = in(floor(x * src_w / dst_w), floor(y * src_h / dst_h))`.
///
/// Integer size ratios replicate each source pixel into an exact block.
pub fn upsample_nearest(plane: &FloatPlane, target_w: u32, target_h: u32) -> Result<FloatPlane> {
    if target_w == 0 || target_h == 0 {
        return Err(Error::Usage(format!(
            "target dimensions must be at least 1x1, got {target_w}x{target_h}"
        )));
    }
    if target_w < plane.width() || target_h < plane.height() {
        return Err(Error::DimensionMismatch(format!(
            "target {target_w}x{target_h} smaller than source {}x{}",
            plane.width(),
            plane.height()
        )));
    }
    let (sw, sh) = (plane.width() as u64, plane.height() as u64);
    let (tw, th) = (target_w as u64, target_h as u64);
    let src = plane.values();
    let values: Vec<f64> = (0..target_h as usize)
        .into_par_iter()
        .flat_map_iter(|y| {
            let sy = (y as u64 * sh / th) as usize;
            let row = &src[sy * sw as usize..(sy + 1) * sw as usize];
            (0..target_w as usize).map(move |x| row[(x as u64 * sw / tw) as usize])
        })
        .collect();
    FloatPlane::new(target_w, target_h, values)
}

/// Mean and population standard deviation (divisor n), accumulated
/// left-to-right per row then across rows.
pub fn stats(plane: &FloatPlane) -> (f64, f64) {
    let n = plane.len() as f64;
    let mut sum = 0.0;
    for &v in plane.values() {
        sum += v;
    }
    let mean = sum / n;
    let mut sq = 0.0;
    for &v in plane.values() {
        let d = v - mean;
        sq += d * d;
    }
    (mean, (sq / n).sqrt())
}

/// Affine match: `out = (pan - mean_pan) * (std_ref / std_pan) + mean_ref`,
/// so the output's mean and std equal the reference's.
pub fn match_mean_std(pan: &FloatPlane, reference: &FloatPlane) -> Result<FloatPlane> {
    if !pan.same_dims(reference) {
        return Err(Error::DimensionMismatch(format!(
            "pan {}x{} vs reference {}x{}",
            pan.width(),
            pan.height(),
            reference.width(),
            reference.height()
        )));
    }
    let (mean_pan, std_pan) = stats(pan);
    let (mean_ref, std_ref) = stats(reference);
    if std_pan == 0.0 {
        return Err(Error::Degenerate(
            "constant PAN plane cannot be gain-matched (std = 0)".into(),
        ));
    }
    let gain = std_ref / std_pan;
    Ok(pan.map(|v| (v - mean_pan) * gain + mean_ref))
}

/// Quantization grid of `levels` evenly spaced representative values
/// spanning [min, max] of the plane; bin(v) snaps to the nearest one.
struct Grid {
    min: f64,
    max: f64,
    step: f64,
    levels: usize,
}

impl Grid {
    fn over(plane: &FloatPlane, levels: u32) -> Grid {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in plane.values() {
            min = min.min(v);
            max = max.max(v);
        }
        let step = if max > min {
            (max - min) / f64::from(levels - 1)
        } else {
            0.0
        };
        Grid {
            min,
            max,
            step,
            levels: levels as usize,
        }
    }

    fn bin(&self, v: f64) -> usize {
        if self.step == 0.0 {
            return 0;
        }
        let idx = ((v - self.min) / self.step).round();
        (idx.max(0.0) as usize).min(self.levels - 1)
    }

    fn center(&self, bin: usize) -> f64 {
        // the clamp keeps the top bin from drifting an ulp past max
        (self.min + bin as f64 * self.step).min(self.max)
    }
}

/// Classical monotone CDF matching on a `levels`-bin quantization of both
/// planes. Output values are drawn from the reference's bin values, so the
/// result stays within [min(ref), max(ref)]; the mapping is monotone
/// non-decreasing in the input value. The planes may differ in size.
pub fn match_cdf(pan: &FloatPlane, reference: &FloatPlane, levels: u32) -> Result<FloatPlane> {
    if levels < 2 {
        return Err(Error::InvalidConfig(format!(
            "cdf levels must be at least 2, got {levels}"
        )));
    }
    let pan_grid = Grid::over(pan, levels);
    let ref_grid = Grid::over(reference, levels);

    let nbins = levels as usize;
    let mut pan_cdf = vec![0.0_f64; nbins];
    for &v in pan.values() {
        pan_cdf[pan_grid.bin(v)] += 1.0;
    }
    let mut ref_cdf = vec![0.0_f64; nbins];
    for &v in reference.values() {
        ref_cdf[ref_grid.bin(v)] += 1.0;
    }
    let pan_n = pan.len() as f64;
    let ref_n = reference.len() as f64;
    let mut acc = 0.0;
    for c in pan_cdf.iter_mut() {
        acc += *c;
        *c = acc / pan_n;
    }
    acc = 0.0;
    for c in ref_cdf.iter_mut() {
        acc += *c;
        *c = acc / ref_n;
    }

    // monotone two-pointer alignment of the CDFs
    let mut mapping = vec![0.0_f64; nbins];
    let mut j = 0;
    for (i, map) in mapping.iter_mut().enumerate() {
        while j + 1 < nbins && ref_cdf[j] < pan_cdf[i] {
            j += 1;
        }
        *map = ref_grid.center(j);
    }

    let values: Vec<f64> = pan
        .values()
        .par_iter()
        .with_min_len(4096)
        .map(|&v| mapping[pan_grid.bin(v)])
        .collect();
    FloatPlane::new(pan.width(), pan.height(), values)
}
