//! Deterministic synthetic test scenes.
//!
//! A scene is a full-resolution ground-truth color image (smooth per-band
//! gradients plus axis-aligned rectangles and disks), the PAN derived from
//! it as the per-pixel mean intensity, and the MS produced by box-average
//! downsampling. The generator is a fully specified SplitMix64 stream, so
//! identical seeds yield byte-identical scenes across implementations.

use crate::error::{Error, Result};
use crate::raster::{FloatPlane, Raster};

/// SplitMix64: state advances by the golden-gamma constant, output is the
/// finalizer of Steele, Lea and Flood. Fully specified, no external state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [lo, hi).
    pub fn range_u32(&mut self, lo: u32, hi: u32) -> u32 {
        debug_assert!(lo < hi);
        lo + (self.next_u64() % u64::from(hi - lo)) as u32
    }
}

/// Ground truth plus the derived MS/PAN pair.
#[derive(Debug, Clone)]
pub struct SynthScene {
    /// Full-resolution 8-bit color ground truth.
    pub ground_truth: Raster,
    /// `factor`-times box-averaged 8-bit MS image.
    pub ms: Raster,
    /// Full-resolution 8-bit PAN: per-pixel mean of the ground-truth bands.
    pub pan: Raster,
}

const SHAPES_PER_KIND: usize = 6;

/// Generate the deterministic scene for `seed`.
///
/// `width` and `height` must be divisible by `factor`, and `factor >= 2`.
pub fn generate_scene(seed: u64, width: u32, height: u32, factor: u32) -> Result<SynthScene> {
    if factor < 2 {
        return Err(Error::InvalidConfig(format!(
            "factor must be at least 2, got {factor}"
        )));
    }
    if width == 0 || height == 0 || !width.is_multiple_of(factor) || !height.is_multiple_of(factor)
    {
        return Err(Error::InvalidConfig(format!(
            "dimensions {width}x{height} must be nonzero and divisible by factor {factor}"
        )));
    }

    let mut rng = SplitMix64::new(seed);
    let n = width as usize * height as usize;
    let mut bands = [vec![0.0_f64; n], vec![0.0_f64; n], vec![0.0_f64; n]];

    // random colors are a shared luminance with small per-band offsets,
    // keeping the bands correlated like real multispectral scenes
    let random_color = |rng: &mut SplitMix64| -> [f64; 3] {
        let lum = rng.range_f64(30.0, 225.0);
        [
            lum + rng.range_f64(-35.0, 35.0),
            lum + rng.range_f64(-35.0, 35.0),
            lum + rng.range_f64(-35.0, 35.0),
        ]
    };

    // smooth gradients: shared slopes with per-band jitter
    let base = rng.range_f64(60.0, 140.0);
    let dx = rng.range_f64(-60.0, 60.0);
    let dy = rng.range_f64(-60.0, 60.0);
    for band in bands.iter_mut() {
        let band_base = base + rng.range_f64(-25.0, 25.0);
        let band_dx = dx + rng.range_f64(-15.0, 15.0);
        let band_dy = dy + rng.range_f64(-15.0, 15.0);
        let wm1 = f64::from(width - 1).max(1.0);
        let hm1 = f64::from(height - 1).max(1.0);
        for y in 0..height as usize {
            for x in 0..width as usize {
                band[y * width as usize + x] =
                    band_base + band_dx * (x as f64 / wm1) + band_dy * (y as f64 / hm1);
            }
        }
    }

    // axis-aligned rectangles
    for _ in 0..SHAPES_PER_KIND {
        let x0 = rng.range_u32(0, width);
        let y0 = rng.range_u32(0, height);
        let rw = rng.range_u32(width / 10 + 2, width / 3 + 3);
        let rh = rng.range_u32(height / 10 + 2, height / 3 + 3);
        let color = random_color(&mut rng);
        let x1 = (x0 + rw).min(width);
        let y1 = (y0 + rh).min(height);
        for (band, &c) in bands.iter_mut().zip(&color) {
            for y in y0..y1 {
                let row = y as usize * width as usize;
                for x in x0..x1 {
                    band[row + x as usize] = c;
                }
            }
        }
    }

    // disks
    for _ in 0..SHAPES_PER_KIND {
        let cx = rng.range_u32(0, width) as i64;
        let cy = rng.range_u32(0, height) as i64;
        let min_dim = width.min(height);
        let radius = rng.range_u32(min_dim / 16 + 2, min_dim / 5 + 3) as i64;
        let color = random_color(&mut rng);
        let r2 = radius * radius;
        let y_lo = (cy - radius).max(0) as u32;
        let y_hi = ((cy + radius + 1).max(0) as u32).min(height);
        let x_lo = (cx - radius).max(0) as u32;
        let x_hi = ((cx + radius + 1).max(0) as u32).min(width);
        for (band, &c) in bands.iter_mut().zip(&color) {
            for y in y_lo..y_hi {
                let dy = i64::from(y) - cy;
                let row = y as usize * width as usize;
                for x in x_lo..x_hi {
                    let dx = i64::from(x) - cx;
                    if dx * dx + dy * dy <= r2 {
                        band[row + x as usize] = c;
                    }
                }
            }
        }
    }

    let planes = [
        FloatPlane::new(width, height, bands[0].clone())?,
        FloatPlane::new(width, height, bands[1].clone())?,
        FloatPlane::new(width, height, bands[2].clone())?,
    ];
    let ground_truth = Raster::from_planes(&planes, 8)?;

    // PAN: plain mean intensity of the quantized ground truth
    let gt_n = n;
    let gt = ground_truth.samples();
    let pan_values: Vec<f64> = (0..gt_n)
        .map(|i| (f64::from(gt[i]) + f64::from(gt[gt_n + i]) + f64::from(gt[2 * gt_n + i])) / 3.0)
        .collect();
    let pan = Raster::from_planes(&[FloatPlane::new(width, height, pan_values)?], 8)?;

    // MS: factor x factor box average of the quantized ground truth
    let (ms_w, ms_h) = (width / factor, height / factor);
    let block = f64::from(factor * factor);
    let mut ms_planes = Vec::with_capacity(3);
    for k in 0..3 {
        let band = &gt[k * gt_n..(k + 1) * gt_n];
        let mut values = Vec::with_capacity(ms_w as usize * ms_h as usize);
        for by in 0..ms_h {
            for bx in 0..ms_w {
                let mut sum = 0.0;
                for y in by * factor..(by + 1) * factor {
                    let row = y as usize * width as usize;
                    for x in bx * factor..(bx + 1) * factor {
                        sum += f64::from(band[row + x as usize]);
                    }
                }
                values.push(sum / block);
            }
        }
        ms_planes.push(FloatPlane::new(ms_w, ms_h, values)?);
    }
    let ms = Raster::from_planes(&ms_planes, 8)?;

    Ok(SynthScene {
        ground_truth,
        ms,
        pan,
    })
}
