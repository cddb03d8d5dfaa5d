//! The six per-band fusion quality indices and report assembly.
//!
//! SD and entropy describe a single plane; CC, SNR, NRMSE, and DI compare a
//! fused plane against a reference plane of equal dimensions. Degenerate
//! cases yield distinguished values (`Infinite` for a zero SNR denominator,
//! `Undefined` for correlation of a constant plane) instead of errors, so
//! batch evaluation over many variants never aborts mid-report.

use std::fmt;

use crate::error::{Error, Result};
use crate::raster::{FloatPlane, Raster};

/// A metric result that may be a distinguished non-numeric value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    Finite(f64),
    /// SNR with a zero error term.
    Infinite,
    /// Correlation against a constant plane.
    Undefined,
}

impl MetricValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            MetricValue::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Finite(v) => write!(f, "{v}"),
            MetricValue::Infinite => f.write_str("infinite"),
            MetricValue::Undefined => f.write_str("undefined"),
        }
    }
}

fn check_pair(f: &FloatPlane, m: &FloatPlane) -> Result<()> {
    if !f.same_dims(m) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            f.width(),
            f.height(),
            m.width(),
            m.height()
        )));
    }
    Ok(())
}

/// Population standard deviation (divisor n*m) about the plane mean.
pub fn std_dev(plane: &FloatPlane) -> f64 {
    crate::preprocess::stats(plane).1
}

/// Shannon entropy in bits over `levels` integer-quantized bins.
///
/// Values are rounded to the nearest integer and clamped to
/// [0, levels - 1]; empty bins contribute nothing.
pub fn entropy(plane: &FloatPlane, levels: u32) -> f64 {
    let levels = levels.max(1) as usize;
    let mut hist = vec![0u64; levels];
    for &v in plane.values() {
        let bin = (v.round().max(0.0) as usize).min(levels - 1);
        hist[bin] += 1;
    }
    let n = plane.len() as f64;
    let mut en = 0.0;
    for &count in &hist {
        if count > 0 {
            let p = count as f64 / n;
            en -= p * p.log2();
        }
    }
    en
}

/// Pearson correlation coefficient; `Undefined` when either plane is constant.
pub fn correlation(f: &FloatPlane, m: &FloatPlane) -> Result<MetricValue> {
    check_pair(f, m)?;
    let n = f.len() as f64;
    let mean_f = f.values().iter().sum::<f64>() / n;
    let mean_m = m.values().iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_f = 0.0;
    let mut var_m = 0.0;
    for (&a, &b) in f.values().iter().zip(m.values()) {
        let da = a - mean_f;
        let db = b - mean_m;
        cov += da * db;
        var_f += da * da;
        var_m += db * db;
    }
    if var_f == 0.0 || var_m == 0.0 {
        return Ok(MetricValue::Undefined);
    }
    // single sqrt keeps cc(f, f) exactly 1; clamp enforces the [-1, 1] range
    let cc = cov / (var_f * var_m).sqrt();
    Ok(MetricValue::Finite(cc.clamp(-1.0, 1.0)))
}

/// Deviation index: mean over pixels of |F - M| / max(M, 1).
///
/// The absolute difference keeps the index a distortion measure, and the
/// 1-DN floor guards the division where the reference is zero.
pub fn deviation_index(f: &FloatPlane, m: &FloatPlane) -> Result<f64> {
    check_pair(f, m)?;
    let mut sum = 0.0;
    for (&a, &b) in f.values().iter().zip(m.values()) {
        sum += (a - b).abs() / b.max(1.0);
    }
    Ok(sum / f.len() as f64)
}

/// Signal-to-noise ratio: sqrt(sum F^2 / sum (F - M)^2); `Infinite` when the
/// planes are identical.
pub fn snr(f: &FloatPlane, m: &FloatPlane) -> Result<MetricValue> {
    check_pair(f, m)?;
    let mut signal = 0.0;
    let mut noise = 0.0;
    for (&a, &b) in f.values().iter().zip(m.values()) {
        signal += a * a;
        let d = a - b;
        noise += d * d;
    }
    if noise == 0.0 {
        return Ok(MetricValue::Infinite);
    }
    Ok(MetricValue::Finite((signal / noise).sqrt()))
}

/// Root mean square error normalized by `max_dn` (255 for 8-bit data).
pub fn nrmse(f: &FloatPlane, m: &FloatPlane, max_dn: f64) -> Result<f64> {
    check_pair(f, m)?;
    let mut sq = 0.0;
    for (&a, &b) in f.values().iter().zip(m.values()) {
        let d = a - b;
        sq += d * d;
    }
    Ok((sq / (f.len() as f64 * max_dn * max_dn)).sqrt())
}

/// Reference-plane statistics (the report's baseline rows).
#[derive(Debug, Clone)]
pub struct OriginRow {
    pub band: String,
    pub sd: f64,
    pub en: f64,
}

/// All six indices for one fused band against its reference band.
#[derive(Debug, Clone)]
pub struct BandRow {
    pub band: String,
    pub sd: f64,
    pub en: f64,
    pub snr: MetricValue,
    pub nrmse: f64,
    pub di: f64,
    pub cc: MetricValue,
}

/// Per-band index values plus run metadata.
#[derive(Debug, Clone)]
pub struct MetricsReport {
    /// Method label for the report rows (variant id, file stem, ...).
    pub method: String,
    pub variant: Option<String>,
    pub mode: Option<String>,
    pub match_mode: Option<String>,
    /// SD/En of the reference bands.
    pub origin: Vec<OriginRow>,
    /// Band rows in red, green, blue order (or a single gray row).
    pub bands: Vec<BandRow>,
    /// Entropy bin count used.
    pub levels: u32,
    /// DN normalization used by NRMSE.
    pub max_dn: f64,
}

fn band_names(bands: u8) -> &'static [&'static str] {
    match bands {
        1 => &["gray"],
        _ => &["red", "green", "blue"],
    }
}

/// Evaluate every index of `fused` against `reference` (the upsampled
/// original MS in the fusion workflow), band by band.
pub fn evaluate(fused: &Raster, reference: &Raster, levels: u32) -> Result<MetricsReport> {
    if fused.width() != reference.width()
        || fused.height() != reference.height()
        || fused.bands() != reference.bands()
    {
        return Err(Error::DimensionMismatch(format!(
            "fused {}x{}x{} vs reference {}x{}x{}",
            fused.width(),
            fused.height(),
            fused.bands(),
            reference.width(),
            reference.height(),
            reference.bands()
        )));
    }
    let max_dn = f64::from(reference.max_value());
    let names = band_names(fused.bands());
    let mut origin = Vec::new();
    let mut bands = Vec::new();
    for (k, name) in names.iter().enumerate().take(fused.bands() as usize) {
        let f = fused.band(k)?;
        let m = reference.band(k)?;
        origin.push(OriginRow {
            band: name.to_string(),
            sd: std_dev(&m),
            en: entropy(&m, levels),
        });
        bands.push(BandRow {
            band: name.to_string(),
            sd: std_dev(&f),
            en: entropy(&f, levels),
            snr: snr(&f, &m)?,
            nrmse: nrmse(&f, &m, max_dn)?,
            di: deviation_index(&f, &m)?,
            cc: correlation(&f, &m)?,
        });
    }
    Ok(MetricsReport {
        method: String::new(),
        variant: None,
        mode: None,
        match_mode: None,
        origin,
        bands,
        levels,
        max_dn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(values: &[f64]) -> FloatPlane {
        FloatPlane::new(values.len() as u32, 1, values.to_vec()).unwrap()
    }

    #[test]
    fn std_dev_fixtures() {
        assert_eq!(std_dev(&row(&[4.0, 4.0, 4.0, 4.0])), 0.0);
        assert_eq!(std_dev(&row(&[0.0, 0.0, 255.0, 255.0])), 127.5);
    }

    #[test]
    fn entropy_fixtures() {
        assert_eq!(entropy(&row(&[9.0, 9.0, 9.0]), 256), 0.0);
        assert_eq!(entropy(&row(&[0.0, 0.0, 255.0, 255.0]), 256), 1.0);
        let uniform: Vec<f64> = (0..256).map(f64::from).collect();
        assert_eq!(entropy(&row(&uniform), 256), 8.0);
    }

    #[test]
    fn correlation_fixtures() {
        let f = row(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(correlation(&f, &f).unwrap(), MetricValue::Finite(1.0));

        let m = row(&[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(correlation(&f, &m).unwrap(), MetricValue::Finite(-1.0));

        let constant = row(&[5.0, 5.0, 5.0, 5.0]);
        assert_eq!(correlation(&f, &constant).unwrap(), MetricValue::Undefined);
        assert_eq!(correlation(&constant, &f).unwrap(), MetricValue::Undefined);
    }

    #[test]
    fn correlation_is_affine_invariant() {
        let m = row(&[3.0, 1.0, 4.0, 1.0, 5.0, 9.0]);
        let f = m.map(|v| 2.5 * v + 7.0);
        match correlation(&f, &m).unwrap() {
            MetricValue::Finite(cc) => assert!((cc - 1.0).abs() < 1e-12),
            other => panic!("expected finite cc, got {other:?}"),
        }
    }

    #[test]
    fn deviation_index_fixtures() {
        let f = row(&[2.0, 2.0, 2.0, 2.0]);
        let m = row(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(deviation_index(&f, &f).unwrap(), 0.0);
        assert_eq!(deviation_index(&f, &m).unwrap(), 1.0);
        // floored denominator when the reference is zero
        assert_eq!(deviation_index(&row(&[3.0]), &row(&[0.0])).unwrap(), 3.0);
    }

    #[test]
    fn snr_fixtures() {
        let f = row(&[2.0, 2.0, 2.0, 2.0]);
        let m = row(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(snr(&f, &m).unwrap(), MetricValue::Finite(2.0));
        assert_eq!(snr(&f, &f).unwrap(), MetricValue::Infinite);

        // scale invariance of the ratio
        let f2 = f.map(|v| v * 2.0);
        let m2 = m.map(|v| v * 2.0);
        assert_eq!(snr(&f2, &m2).unwrap(), MetricValue::Finite(2.0));
    }

    #[test]
    fn nrmse_fixtures() {
        let f = row(&[2.0, 2.0, 2.0, 2.0]);
        let m = row(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(nrmse(&f, &f, 255.0).unwrap(), 0.0);
        assert!((nrmse(&f, &m, 255.0).unwrap() - 1.0 / 255.0).abs() < 1e-15);

        let hi = row(&[255.0, 255.0]);
        let lo = row(&[0.0, 0.0]);
        assert_eq!(nrmse(&hi, &lo, 255.0).unwrap(), 1.0);
    }

    #[test]
    fn di_and_snr_are_asymmetric_nrmse_is_symmetric() {
        let f = row(&[2.0, 2.0]);
        let m = row(&[1.0, 1.0]);
        assert_ne!(
            deviation_index(&f, &m).unwrap(),
            deviation_index(&m, &f).unwrap()
        );
        assert_ne!(snr(&f, &m).unwrap(), snr(&m, &f).unwrap());
        assert_eq!(nrmse(&f, &m, 255.0).unwrap(), nrmse(&m, &f, 255.0).unwrap());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let f = row(&[1.0, 2.0]);
        let m = row(&[1.0, 2.0, 3.0]);
        assert!(matches!(snr(&f, &m), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            correlation(&f, &m),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            nrmse(&f, &m, 255.0),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            deviation_index(&f, &m),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn evaluating_a_raster_against_itself_is_ideal() {
        let raster =
            Raster::new(2, 2, 3, 8, vec![0, 1, 2, 3, 10, 11, 12, 13, 20, 21, 22, 23]).unwrap();
        let report = evaluate(&raster, &raster, 256).unwrap();
        assert_eq!(report.bands.len(), 3);
        assert_eq!(
            report
                .bands
                .iter()
                .map(|b| b.band.as_str())
                .collect::<Vec<_>>(),
            ["red", "green", "blue"]
        );
        for (band, origin) in report.bands.iter().zip(&report.origin) {
            assert_eq!(band.di, 0.0);
            assert_eq!(band.nrmse, 0.0);
            assert_eq!(band.snr, MetricValue::Infinite);
            assert_eq!(band.cc, MetricValue::Finite(1.0));
            assert_eq!(band.sd, origin.sd);
            assert_eq!(band.en, origin.en);
        }
    }

    #[test]
    fn evaluate_rejects_shape_mismatch() {
        let a = Raster::new(2, 2, 1, 8, vec![0, 1, 2, 3]).unwrap();
        let b = Raster::new(2, 1, 1, 8, vec![0, 1]).unwrap();
        assert!(matches!(
            evaluate(&a, &b, 256),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
