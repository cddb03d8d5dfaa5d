//! Integer raster and floating-point working-plane data model.
//!
//! A [`Raster`] stores digital numbers (DN) in planar band-major order:
//! all of band 0 row by row, then band 1, and so on. All numeric kernels
//! operate on [`FloatPlane`] values extracted per band.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest DN representable at the given bit depth.
pub fn max_dn(bit_depth: u8) -> u16 {
    debug_assert!((1..=16).contains(&bit_depth));
    (((1u32 << bit_depth) - 1) & 0xFFFF) as u16
}

/// Integer multi-band image with an explicit bit depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: u32,
    height: u32,
    bands: u8,
    bit_depth: u8,
    samples: Vec<u16>,
}

impl Raster {
    /// Build a raster, validating every invariant of the data model.
    pub fn new(
        width: u32,
        height: u32,
        bands: u8,
        bit_depth: u8,
        samples: Vec<u16>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Usage(format!(
                "raster dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if bands != 1 && bands != 3 {
            return Err(Error::Usage(format!(
                "band count must be 1 or 3, got {bands}"
            )));
        }
        if !(1..=16).contains(&bit_depth) {
            return Err(Error::Usage(format!(
                "bit depth must be in [1, 16], got {bit_depth}"
            )));
        }
        let expected = width as usize * height as usize * bands as usize;
        if samples.len() != expected {
            return Err(Error::Usage(format!(
                "sample count {} does not match {width}x{height}x{bands} = {expected}",
                samples.len()
            )));
        }
        let max = max_dn(bit_depth);
        if let Some(pos) = samples.iter().position(|&s| s > max) {
            return Err(Error::Usage(format!(
                "sample {} at index {pos} exceeds max DN {max} for depth {bit_depth}",
                samples[pos]
            )));
        }
        Ok(Raster {
            width,
            height,
            bands,
            bit_depth,
            samples,
        })
    }

    /// Quantize one plane per band and assemble a raster.
    pub fn from_planes(planes: &[FloatPlane], bit_depth: u8) -> Result<Self> {
        let first = planes
            .first()
            .ok_or_else(|| Error::Usage("at least one plane required".into()))?;
        let (w, h) = (first.width(), first.height());
        let mut samples = Vec::with_capacity(planes.len() * first.len());
        for plane in planes {
            if plane.width() != w || plane.height() != h {
                return Err(Error::DimensionMismatch(format!(
                    "plane {}x{} differs from {w}x{h}",
                    plane.width(),
                    plane.height()
                )));
            }
            samples.extend_from_slice(&quantize(plane, bit_depth)?);
        }
        Raster::new(w, h, planes.len() as u8, bit_depth, samples)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn bands(&self) -> u8 {
        self.bands
    }

    pub fn bit_depth(&self) -> u8 {
        self.bit_depth
    }

    /// Max DN admissible at this raster's depth.
    pub fn max_value(&self) -> u16 {
        max_dn(self.bit_depth)
    }

    /// All samples, planar band-major then row-major.
    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    fn plane_len(&self) -> usize {
        self.width as usize * self.height as usize
    }

    /// Samples of band `k` as a slice.
    pub fn band_samples(&self, k: usize) -> Result<&[u16]> {
        if k >= self.bands as usize {
            return Err(Error::BandOutOfRange {
                index: k,
                bands: self.bands,
            });
        }
        let n = self.plane_len();
        Ok(&self.samples[k * n..(k + 1) * n])
    }

    /// Band `k` lifted to a working plane; values are exact copies of the DNs.
    pub fn band(&self, k: usize) -> Result<FloatPlane> {
        let src = self.band_samples(k)?;
        let values = src.iter().map(|&s| f64::from(s)).collect();
        FloatPlane::new(self.width, self.height, values)
    }
}

/// Single-band real-valued plane, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPlane {
    width: u32,
    height: u32,
    values: Vec<f64>,
}

impl FloatPlane {
    pub fn new(width: u32, height: u32, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Usage(format!(
                "plane dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        let expected = width as usize * height as usize;
        if values.len() != expected {
            return Err(Error::Usage(format!(
                "value count {} does not match {width}x{height} = {expected}",
                values.len()
            )));
        }
        Ok(FloatPlane {
            width,
            height,
            values,
        })
    }

    pub fn from_fn(width: u32, height: u32, f: impl Fn(u32, u32) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        FloatPlane::new(width, height, values)
    }

    pub fn filled(width: u32, height: u32, value: f64) -> Result<Self> {
        FloatPlane::new(width, height, vec![value; width as usize * height as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.values[y as usize * self.width as usize + x as usize]
    }

    pub fn same_dims(&self, other: &FloatPlane) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Element-wise map into a new plane of the same dimensions.
    pub fn map(&self, f: impl Fn(f64) -> f64 + Sync) -> FloatPlane {
        let values = self
            .values
            .par_iter()
            .with_min_len(4096)
            .map(|&v| f(v))
            .collect();
        FloatPlane {
            width: self.width,
            height: self.height,
            values,
        }
    }
}

/// Clamp to `[0, 2^bit_depth - 1]` then round half away from zero.
///
/// Errors with the offending pixel index when a value is NaN or infinite.
pub fn quantize(plane: &FloatPlane, bit_depth: u8) -> Result<Vec<u16>> {
    if !(1..=16).contains(&bit_depth) {
        return Err(Error::Usage(format!(
            "bit depth must be in [1, 16], got {bit_depth}"
        )));
    }
    if let Some(index) = plane.values().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let max = f64::from(max_dn(bit_depth));
    let out = plane
        .values()
        .par_iter()
        .with_min_len(4096)
        .map(|&v| v.clamp(0.0, max).round() as u16)
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(values: &[f64]) -> FloatPlane {
        FloatPlane::new(values.len() as u32, 1, values.to_vec()).unwrap()
    }

    #[test]
    fn raster_invariants_are_enforced() {
        assert!(Raster::new(0, 1, 1, 8, vec![]).is_err());
        assert!(Raster::new(1, 1, 2, 8, vec![0, 0]).is_err());
        assert!(Raster::new(1, 1, 1, 17, vec![0]).is_err());
        assert!(Raster::new(2, 1, 1, 8, vec![0]).is_err());
        // sample above max DN for depth 6
        assert!(Raster::new(1, 1, 1, 6, vec![64]).is_err());
        assert!(Raster::new(1, 1, 1, 6, vec![63]).is_ok());
    }

    #[test]
    fn band_extraction_is_exact_and_checked() {
        let r = Raster::new(2, 1, 3, 8, vec![1, 2, 10, 20, 100, 200]).unwrap();
        assert_eq!(r.band(0).unwrap().values(), &[1.0, 2.0]);
        assert_eq!(r.band(1).unwrap().values(), &[10.0, 20.0]);
        assert_eq!(r.band(2).unwrap().values(), &[100.0, 200.0]);
        assert!(matches!(
            r.band(3),
            Err(Error::BandOutOfRange { index: 3, bands: 3 })
        ));

        let single = Raster::new(2, 1, 1, 8, vec![7, 9]).unwrap();
        assert_eq!(single.band(0).unwrap().values(), &[7.0, 9.0]);
    }

    #[test]
    fn band_sums_cover_all_samples() {
        let r = Raster::new(2, 2, 3, 8, (0..12).map(|i| i * 3).collect()).unwrap();
        let per_band: f64 = (0..3)
            .map(|k| r.band(k).unwrap().values().iter().sum::<f64>())
            .sum();
        let total: f64 = r.samples().iter().map(|&s| f64::from(s)).sum();
        assert_eq!(per_band, total);
    }

    #[test]
    fn quantize_rounds_half_away_from_zero() {
        let q = quantize(&plane(&[127.5, 0.5, 126.4]), 8).unwrap();
        assert_eq!(q, vec![128, 1, 126]);
    }

    #[test]
    fn quantize_clamps_to_depth_range() {
        let q = quantize(&plane(&[-3.2, 300.0, 255.0]), 8).unwrap();
        assert_eq!(q, vec![0, 255, 255]);
        let q6 = quantize(&plane(&[64.0, 63.2]), 6).unwrap();
        assert_eq!(q6, vec![63, 63]);
    }

    #[test]
    fn quantize_rejects_non_finite_with_index() {
        let p = plane(&[1.0, f64::NAN, 2.0]);
        assert!(matches!(
            quantize(&p, 8),
            Err(Error::NonFinite { index: 1 })
        ));
        let p = plane(&[1.0, 2.0, f64::INFINITY]);
        assert!(matches!(
            quantize(&p, 8),
            Err(Error::NonFinite { index: 2 })
        ));
    }

    #[test]
    fn from_planes_assembles_planar_storage() {
        let r = FloatPlane::new(2, 1, vec![1.0, 2.0]).unwrap();
        let g = FloatPlane::new(2, 1, vec![3.0, 4.0]).unwrap();
        let b = FloatPlane::new(2, 1, vec![5.0, 6.0]).unwrap();
        let raster = Raster::from_planes(&[r, g, b], 8).unwrap();
        assert_eq!(raster.samples(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(raster.bands(), 3);
    }
}
