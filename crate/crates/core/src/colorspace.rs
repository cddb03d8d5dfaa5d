//! Registry of the ten RGB-to-intensity linear transform variants and
//! their pixel-wise forward/inverse application.
//!
//! Each variant carries the forward matrix and the inverse matrix as
//! printed in its source, plus its hue conventions. Radical entries
//! (1/sqrt(3), sqrt(2)/6, ...) are evaluated at full f64 precision;
//! decimal entries (0.577, 0.299, 1.703, ...) are used verbatim. Several
//! printed pairs are not mutually inverse; `InverseMode` selects between
//! the printed arithmetic and a numerically corrected inverse.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mat3::Mat3;
use crate::raster::FloatPlane;

/// Transform variant identifier. Lowercase names (`hsv`, `ihs1`, ..., `yiq`)
/// are the external string form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Hsv,
    Ihs1,
    Ihs2,
    Ihs3,
    Ihs4,
    Ihs5,
    Ihs6,
    Ihs7,
    Hls,
    Yiq,
}

impl Variant {
    /// Registry order; reports iterate variants in this order.
    pub const ALL: [Variant; 10] = [
        Variant::Hsv,
        Variant::Ihs1,
        Variant::Ihs2,
        Variant::Ihs3,
        Variant::Ihs4,
        Variant::Ihs5,
        Variant::Ihs6,
        Variant::Ihs7,
        Variant::Hls,
        Variant::Yiq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Hsv => "hsv",
            Variant::Ihs1 => "ihs1",
            Variant::Ihs2 => "ihs2",
            Variant::Ihs3 => "ihs3",
            Variant::Ihs4 => "ihs4",
            Variant::Ihs5 => "ihs5",
            Variant::Ihs6 => "ihs6",
            Variant::Ihs7 => "ihs7",
            Variant::Hls => "hls",
            Variant::Yiq => "yiq",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hsv" => Ok(Variant::Hsv),
            "ihs1" => Ok(Variant::Ihs1),
            "ihs2" => Ok(Variant::Ihs2),
            "ihs3" => Ok(Variant::Ihs3),
            "ihs4" => Ok(Variant::Ihs4),
            "ihs5" => Ok(Variant::Ihs5),
            "ihs6" => Ok(Variant::Ihs6),
            "ihs7" => Ok(Variant::Ihs7),
            "hls" => Ok(Variant::Hls),
            "yiq" => Ok(Variant::Yiq),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

/// Which component goes in the arctangent numerator when deriving hue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HueArgOrder {
    /// H = atan(v2 / v1)
    V2OverV1,
    /// H = atan(v1 / v2)
    V1OverV2,
}

/// How hue is placed on the full circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HueQuadrantRule {
    /// Quadrant-aware arctangent normalized to [0, 2*pi).
    QuadrantAware,
    /// The explicit four-case rule used by IHS7.
    PiecewiseIhs7,
}

/// Inverse-transform selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseMode {
    /// Inverse matrix digit-for-digit as printed, including misprints.
    PaperExact,
    /// Numeric inverse of the forward matrix, so the round trip is exact.
    /// When the forward is singular the printed inverse is taken as ground
    /// truth and the forward becomes its numeric inverse.
    Corrected,
}

impl InverseMode {
    pub fn name(self) -> &'static str {
        match self {
            InverseMode::PaperExact => "paper-exact",
            InverseMode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for InverseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InverseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper-exact" => Ok(InverseMode::PaperExact),
            "corrected" => Ok(InverseMode::Corrected),
            other => Err(Error::InvalidConfig(format!(
                "unknown inverse mode {other:?}"
            ))),
        }
    }
}

/// One variant's matrices and hue conventions.
#[derive(Debug, Clone)]
pub struct TransformSpec {
    pub variant: Variant,
    /// RGB -> (I, v1, v2) matrix as printed.
    pub forward: Mat3,
    /// (I, v1, v2) -> RGB matrix as printed.
    pub printed_inverse: Option<Mat3>,
    pub hue_arg_order: HueArgOrder,
    pub hue_quadrant_rule: HueQuadrantRule,
    /// Documented discrepancies of the printed matrices.
    pub notes: &'static str,
}

/// Intensity plane plus the Cartesian hue/saturation components.
#[derive(Debug, Clone, PartialEq)]
pub struct IhsPlanes {
    pub intensity: FloatPlane,
    pub v1: FloatPlane,
    pub v2: FloatPlane,
}

/// Look up a variant's transform data.
pub fn get_variant(variant: Variant) -> TransformSpec {
    let r2 = 1.0 / 2.0_f64.sqrt();
    let r3 = 1.0 / 3.0_f64.sqrt();
    let r6 = 1.0 / 6.0_f64.sqrt();
    let third = 1.0 / 3.0;
    match variant {
        Variant::Hsv => TransformSpec {
            variant,
            forward: Mat3([
                [0.577, 0.577, 0.577],
                [-0.408, -0.408, 0.816],
                [-0.707, 0.707, 1.703],
            ]),
            printed_inverse: Some(Mat3([
                [0.577, -0.408, -0.707],
                [0.577, -0.408, 0.816],
                [0.577, 0.816, 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "decimal entries as printed; forward row 3 ends in 1.703 and the \
                    printed pair is not mutually inverse",
        },
        Variant::Ihs1 => TransformSpec {
            variant,
            forward: Mat3([[r3, r3, r3], [-r6, -r6, 2.0 * r6], [-r2, r2, 0.0]]),
            printed_inverse: Some(Mat3([[r3, -r6, -r2], [r3, -r6, r2], [r3, 2.0 * r6, 0.0]])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "orthonormal rows; printed inverse is the transpose of the forward",
        },
        Variant::Ihs2 => TransformSpec {
            variant,
            forward: Mat3([[third, third, third], [-r6, -r6, 2.0 * r6], [r6, -r6, 0.0]]),
            printed_inverse: Some(Mat3([
                [1.0, -0.204124, 0.612372],
                [1.0, -0.204124, -0.612372],
                [1.0, 0.408248, 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "printed inverse carries half-scale v-columns and is not mutually \
                    inverse with the forward",
        },
        Variant::Ihs3 => TransformSpec {
            variant,
            forward: Mat3([[third, third, third], [-r6, -r6, 2.0 * r6], [r6, -r6, 0.0]]),
            printed_inverse: Some(Mat3([
                [1.0, -r6, 3.0 * r6],
                [1.0, -r6, -3.0 * r6],
                [1.0, 2.0 * r6, 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "printed pair is mutually inverse",
        },
        Variant::Ihs4 => TransformSpec {
            variant,
            forward: Mat3([[third, third, third], [r6, r6, -2.0 * r6], [r2, -r2, 0.0]]),
            printed_inverse: Some(Mat3([[r3, r6, r2], [r3, r6, -r2], [r3, 2.0 * r6, 0.0]])),
            hue_arg_order: HueArgOrder::V1OverV2,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "printed inverse column 1 is 1/sqrt(3) where mutual inversion needs 1, \
                    and entry (3,2) has a flipped sign",
        },
        Variant::Ihs5 => TransformSpec {
            variant,
            forward: Mat3([[third, third, third], [r6, r6, -2.0 * r6], [r2, -r2, 0.0]]),
            printed_inverse: Some(Mat3([
                [1.0, r6, r2],
                [1.0, r6, -0.5],
                [1.0, -2.0 * r6, 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "printed inverse entry (2,3) is -1/2 where mutual inversion needs -1/sqrt(2)",
        },
        Variant::Ihs6 => TransformSpec {
            variant,
            forward: Mat3([
                [third, third, third],
                [
                    2.0_f64.sqrt() / 6.0,
                    2.0_f64.sqrt() / 6.0,
                    2.0_f64.sqrt() / 6.0,
                ],
                [r2, -r2, 0.0],
            ]),
            printed_inverse: Some(Mat3([
                [1.0, -r2, r2],
                [1.0, -r2, -r2],
                [1.0, 2.0_f64.sqrt(), 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "forward rows 1 and 2 are proportional, so the printed forward is singular",
        },
        Variant::Ihs7 => TransformSpec {
            variant,
            forward: Mat3([
                [third, third, third],
                [0.5, -0.5, 1.0],
                [3.0_f64.sqrt() / 2.0, -(3.0_f64.sqrt()) / 2.0, 0.0],
            ]),
            printed_inverse: Some(Mat3([
                [1.0, -third, r3],
                [1.0, -third, -r3],
                [1.0, 2.0 * third, 0.0],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::PiecewiseIhs7,
            notes: "hue uses the explicit four-case quadrant rule; forward row 2 does not \
                    sum to zero, so gray pixels keep a nonzero v1",
        },
        Variant::Hls => TransformSpec {
            variant,
            forward: Mat3([[third, third, third], [r6, r6, -2.0 * r6], [r2, -r2, 0.0]]),
            printed_inverse: Some(Mat3([[1.0, r6, r2], [1.0, r6, -r2], [1.0, -2.0 * r6, 0.0]])),
            hue_arg_order: HueArgOrder::V1OverV2,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "printed pair is mutually inverse",
        },
        Variant::Yiq => TransformSpec {
            variant,
            forward: Mat3([
                [0.299, 0.587, 0.144],
                [0.596, -0.274, 0.322],
                [0.211, -0.523, 0.312],
            ]),
            printed_inverse: Some(Mat3([
                [1.0, 0.956, 0.621],
                [1.0, -0.272, -0.647],
                [1.0, -1.106, 1.703],
            ])),
            hue_arg_order: HueArgOrder::V2OverV1,
            hue_quadrant_rule: HueQuadrantRule::QuadrantAware,
            notes: "coefficients as printed (0.144, +0.322, 0.211/0.312), which differ \
                    from the broadcast-standard YIQ matrix",
        },
    }
}

/// Look up a variant by its lowercase string id.
pub fn get_variant_by_name(name: &str) -> Result<TransformSpec> {
    Ok(get_variant(name.parse()?))
}

fn check_same_dims(planes: &[&FloatPlane]) -> Result<()> {
    let first = planes[0];
    for p in &planes[1..] {
        if !first.same_dims(p) {
            return Err(Error::DimensionMismatch(format!(
                "planes {}x{} and {}x{} differ",
                first.width(),
                first.height(),
                p.width(),
                p.height()
            )));
        }
    }
    Ok(())
}

/// Per-pixel (out0, out1, out2) = m * (a, b, c).
fn apply_matrix(
    m: &Mat3,
    a: &FloatPlane,
    b: &FloatPlane,
    c: &FloatPlane,
) -> (FloatPlane, FloatPlane, FloatPlane) {
    let (w, h) = (a.width(), a.height());
    let combine = |row: [f64; 3]| -> FloatPlane {
        let values: Vec<f64> = a
            .values()
            .par_iter()
            .zip(b.values().par_iter())
            .zip(c.values().par_iter())
            .with_min_len(4096)
            .map(|((&x, &y), &z)| row[0] * x + row[1] * y + row[2] * z)
            .collect();
        FloatPlane::new(w, h, values).expect("dimensions preserved")
    };
    (combine(m.0[0]), combine(m.0[1]), combine(m.0[2]))
}

/// Forward transform with the matrix as printed: (I, v1, v2) = forward * (R, G, B).
pub fn forward(
    spec: &TransformSpec,
    r: &FloatPlane,
    g: &FloatPlane,
    b: &FloatPlane,
) -> Result<IhsPlanes> {
    check_same_dims(&[r, g, b])?;
    let (intensity, v1, v2) = apply_matrix(&spec.forward, r, g, b);
    Ok(IhsPlanes { intensity, v1, v2 })
}

/// Forward transform with the effective matrix for `mode`.
///
/// Identical to [`forward`] except for singular-forward variants in
/// corrected mode, where the printed inverse is taken as ground truth and
/// the forward becomes its numeric inverse.
pub fn forward_with_mode(
    spec: &TransformSpec,
    mode: InverseMode,
    r: &FloatPlane,
    g: &FloatPlane,
    b: &FloatPlane,
) -> Result<IhsPlanes> {
    check_same_dims(&[r, g, b])?;
    let m = effective_forward_matrix(spec, mode)?;
    let (intensity, v1, v2) = apply_matrix(&m, r, g, b);
    Ok(IhsPlanes { intensity, v1, v2 })
}

/// The forward matrix in effect for `mode`.
pub fn effective_forward_matrix(spec: &TransformSpec, mode: InverseMode) -> Result<Mat3> {
    match mode {
        InverseMode::PaperExact => Ok(spec.forward),
        InverseMode::Corrected => {
            if !spec.forward.is_singular() {
                return Ok(spec.forward);
            }
            spec.printed_inverse
                .and_then(|p| p.inverse())
                .ok_or(Error::VariantUnusable {
                    variant: spec.variant,
                })
        }
    }
}

/// The inverse matrix in effect for `mode`.
///
/// Paper-exact returns the printed inverse verbatim. Corrected returns the
/// numeric inverse of the printed forward; when the forward is singular it
/// falls back to the printed inverse as ground truth.
pub fn effective_inverse_matrix(spec: &TransformSpec, mode: InverseMode) -> Result<Mat3> {
    match mode {
        InverseMode::PaperExact => spec.printed_inverse.ok_or_else(|| {
            Error::InvalidConfig(format!(
                "variant {} has no printed inverse for paper-exact mode",
                spec.variant
            ))
        }),
        InverseMode::Corrected => {
            if let Some(inv) = spec.forward.inverse() {
                return Ok(inv);
            }
            match spec.printed_inverse {
                Some(p) if !p.is_singular() => Ok(p),
                _ => Err(Error::VariantUnusable {
                    variant: spec.variant,
                }),
            }
        }
    }
}

/// Inverse transform: (R', G', B') = effective_inverse * (I, v1, v2).
pub fn inverse(
    spec: &TransformSpec,
    mode: InverseMode,
    planes: &IhsPlanes,
) -> Result<(FloatPlane, FloatPlane, FloatPlane)> {
    check_same_dims(&[&planes.intensity, &planes.v1, &planes.v2])?;
    let m = effective_inverse_matrix(spec, mode)?;
    Ok(apply_matrix(&m, &planes.intensity, &planes.v1, &planes.v2))
}

/// Derive hue (radians in [0, 2*pi)) and saturation from the Cartesian pair.
///
/// S = sqrt(v1^2 + v2^2) everywhere. H follows the variant's argument order
/// and quadrant rule; at v1 = v2 = 0 the hue is 0.
pub fn hue_saturation(
    spec: &TransformSpec,
    v1: &FloatPlane,
    v2: &FloatPlane,
) -> Result<(FloatPlane, FloatPlane)> {
    check_same_dims(&[v1, v2])?;
    let order = spec.hue_arg_order;
    let rule = spec.hue_quadrant_rule;
    let pairs: Vec<(f64, f64)> = v1
        .values()
        .par_iter()
        .zip(v2.values().par_iter())
        .with_min_len(4096)
        .map(|(&a, &b)| {
            let s = (a * a + b * b).sqrt();
            let h = match rule {
                HueQuadrantRule::PiecewiseIhs7 => ihs7_hue(a, b),
                HueQuadrantRule::QuadrantAware => {
                    if a == 0.0 && b == 0.0 {
                        0.0
                    } else {
                        let raw = match order {
                            HueArgOrder::V2OverV1 => b.atan2(a),
                            HueArgOrder::V1OverV2 => a.atan2(b),
                        };
                        if raw < 0.0 {
                            raw + 2.0 * PI
                        } else {
                            raw
                        }
                    }
                }
            };
            (h, s)
        })
        .collect();
    let (hs, ss): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok((
        FloatPlane::new(v1.width(), v1.height(), hs)?,
        FloatPlane::new(v1.width(), v1.height(), ss)?,
    ))
}

/// The four-case hue rule of the IHS7 variant.
fn ihs7_hue(v1: f64, v2: f64) -> f64 {
    if v1 == 0.0 && v2 == 0.0 {
        0.0
    } else if v1 >= 0.0 && v2 < 0.0 {
        (v2 / v1).atan() + 2.0 * PI
    } else if v1 >= 0.0 && v2 >= 0.0 {
        (v2 / v1).atan()
    } else {
        (v2 / v1).atan() + PI
    }
}

/// The three common per-pixel intensity definitions:
/// V = max(R, G, B), I = (R + G + B) / 3, L = (max + min) / 2.
pub fn intensity_definitions(
    r: &FloatPlane,
    g: &FloatPlane,
    b: &FloatPlane,
) -> Result<(FloatPlane, FloatPlane, FloatPlane)> {
    check_same_dims(&[r, g, b])?;
    let (w, h) = (r.width(), r.height());
    let triples: Vec<(f64, f64, f64)> = r
        .values()
        .par_iter()
        .zip(g.values().par_iter())
        .zip(b.values().par_iter())
        .with_min_len(4096)
        .map(|((&x, &y), &z)| {
            let max = x.max(y).max(z);
            let min = x.min(y).min(z);
            (max, (x + y + z) / 3.0, (max + min) / 2.0)
        })
        .collect();
    let mut v = Vec::with_capacity(triples.len());
    let mut i = Vec::with_capacity(triples.len());
    let mut l = Vec::with_capacity(triples.len());
    for (a, b, c) in triples {
        v.push(a);
        i.push(b);
        l.push(c);
    }
    Ok((
        FloatPlane::new(w, h, v)?,
        FloatPlane::new(w, h, i)?,
        FloatPlane::new(w, h, l)?,
    ))
}

/// One row of the matrix-consistency audit.
#[derive(Debug, Clone)]
pub struct ConsistencyRow {
    pub variant: Variant,
    /// Determinant of the printed forward matrix.
    pub forward_det: f64,
    /// Max-abs deviation of printed_inverse * printed_forward from identity.
    pub printed_pair_deviation: f64,
    /// Max-abs deviation of the corrected pair from identity.
    pub corrected_pair_deviation: f64,
    pub recommendation: InverseMode,
}

/// Audit every variant's printed pair and the corrected fallback.
pub fn consistency_report() -> Vec<ConsistencyRow> {
    Variant::ALL
        .iter()
        .map(|&variant| {
            let spec = get_variant(variant);
            let printed_pair_deviation = spec
                .printed_inverse
                .map(|inv| inv.mul(&spec.forward).deviation_from_identity())
                .unwrap_or(f64::INFINITY);
            let corrected_pair_deviation = match (
                effective_inverse_matrix(&spec, InverseMode::Corrected),
                effective_forward_matrix(&spec, InverseMode::Corrected),
            ) {
                (Ok(inv), Ok(fwd)) => inv.mul(&fwd).deviation_from_identity(),
                _ => f64::INFINITY,
            };
            let recommendation = if printed_pair_deviation < 1e-6 {
                InverseMode::PaperExact
            } else {
                InverseMode::Corrected
            };
            ConsistencyRow {
                variant,
                forward_det: spec.forward.det(),
                printed_pair_deviation,
                corrected_pair_deviation,
                recommendation,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane1(v: f64) -> FloatPlane {
        FloatPlane::filled(1, 1, v).unwrap()
    }

    fn forward_pixel(variant: Variant, rgb: [f64; 3]) -> [f64; 3] {
        get_variant(variant).forward.apply(rgb)
    }

    #[test]
    fn registry_matches_printed_rows() {
        let r3 = 1.0 / 3.0_f64.sqrt();
        let ihs1 = get_variant(Variant::Ihs1);
        assert_eq!(ihs1.forward.0[0], [r3, r3, r3]);

        let yiq = get_variant(Variant::Yiq);
        assert_eq!(yiq.forward.0[0], [0.299, 0.587, 0.144]);

        let ihs6 = get_variant(Variant::Ihs6);
        let e = 2.0_f64.sqrt() / 6.0;
        assert_eq!(ihs6.forward.0[1], [e, e, e]);
    }

    #[test]
    fn hue_order_is_v1_over_v2_only_for_ihs4_and_hls() {
        for v in Variant::ALL {
            let expected = matches!(v, Variant::Ihs4 | Variant::Hls);
            let got = get_variant(v).hue_arg_order == HueArgOrder::V1OverV2;
            assert_eq!(got, expected, "variant {v}");
        }
    }

    #[test]
    fn ihs2_gray_pixel_maps_to_zero_chroma() {
        let [i, v1, v2] = forward_pixel(Variant::Ihs2, [90.0, 90.0, 90.0]);
        assert!((i - 90.0).abs() < 1e-12);
        assert!(v1.abs() < 1e-12);
        assert!(v2.abs() < 1e-12);
    }

    #[test]
    fn ihs1_gray_pixel_scales_intensity_by_sqrt3() {
        let [i, v1, v2] = forward_pixel(Variant::Ihs1, [100.0, 100.0, 100.0]);
        assert!((i - 300.0 / 3.0_f64.sqrt()).abs() < 1e-9);
        assert!((i - 173.205).abs() < 1e-3);
        assert!(v1.abs() < 1e-12);
        assert!(v2.abs() < 1e-12);
    }

    #[test]
    fn yiq_paper_exact_gray_pixel_exposes_row_sums() {
        let [y, i, q] = forward_pixel(Variant::Yiq, [100.0, 100.0, 100.0]);
        assert!((y - 103.0).abs() < 1e-9);
        assert!((i - 64.4).abs() < 1e-9);
        assert!(q.abs() < 1e-9);
    }

    #[test]
    fn ihs1_corrected_inverse_is_the_printed_transpose() {
        let spec = get_variant(Variant::Ihs1);
        let corrected = effective_inverse_matrix(&spec, InverseMode::Corrected).unwrap();
        let printed = spec.printed_inverse.unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((corrected.0[i][j] - printed.0[i][j]).abs() < 1e-12);
            }
        }
        assert_eq!(printed, spec.forward.transpose());
    }

    #[test]
    fn ihs3_and_hls_printed_pairs_multiply_to_identity() {
        for v in [Variant::Ihs3, Variant::Hls] {
            let spec = get_variant(v);
            let dev = spec
                .printed_inverse
                .unwrap()
                .mul(&spec.forward)
                .deviation_from_identity();
            assert!(dev < 1e-12, "variant {v}: deviation {dev}");
        }
    }

    #[test]
    fn ihs5_printed_pair_round_trip_deviates() {
        let spec = get_variant(Variant::Ihs5);
        let dev = spec
            .printed_inverse
            .unwrap()
            .mul(&spec.forward)
            .deviation_from_identity();
        assert!(dev > 1e-3, "expected a visible deviation, got {dev}");
    }

    #[test]
    fn ihs6_forward_is_singular_and_corrected_mode_falls_back() {
        let spec = get_variant(Variant::Ihs6);
        assert!(spec.forward.is_singular());
        assert!(spec.forward.det().abs() < 1e-12);
        let inv = effective_inverse_matrix(&spec, InverseMode::Corrected).unwrap();
        assert_eq!(inv, spec.printed_inverse.unwrap());
        let fwd = effective_forward_matrix(&spec, InverseMode::Corrected).unwrap();
        assert!(inv.mul(&fwd).deviation_from_identity() < 1e-12);
    }

    #[test]
    fn forward_then_corrected_inverse_is_identity() {
        for v in Variant::ALL {
            let spec = get_variant(v);
            if v == Variant::Ihs6 {
                continue; // singular printed forward; covered by the fallback test
            }
            let r = plane1(10.0);
            let g = plane1(20.0);
            let b = plane1(30.0);
            let planes = forward(&spec, &r, &g, &b).unwrap();
            let (r2, g2, b2) = inverse(&spec, InverseMode::Corrected, &planes).unwrap();
            assert!((r2.values()[0] - 10.0).abs() < 1e-9, "variant {v}");
            assert!((g2.values()[0] - 20.0).abs() < 1e-9, "variant {v}");
            assert!((b2.values()[0] - 30.0).abs() < 1e-9, "variant {v}");
        }
    }

    #[test]
    fn hls_paper_exact_round_trip_is_identity() {
        let spec = get_variant(Variant::Hls);
        let planes = forward(&spec, &plane1(10.0), &plane1(20.0), &plane1(30.0)).unwrap();
        let (r, g, b) = inverse(&spec, InverseMode::PaperExact, &planes).unwrap();
        assert!((r.values()[0] - 10.0).abs() < 1e-9);
        assert!((g.values()[0] - 20.0).abs() < 1e-9);
        assert!((b.values()[0] - 30.0).abs() < 1e-9);
    }

    #[test]
    fn hue_saturation_handles_origin_and_pythagoras() {
        let spec = get_variant(Variant::Ihs1);
        let (h, s) = hue_saturation(&spec, &plane1(0.0), &plane1(0.0)).unwrap();
        assert_eq!(h.values()[0], 0.0);
        assert_eq!(s.values()[0], 0.0);

        let (_, s) = hue_saturation(&spec, &plane1(3.0), &plane1(4.0)).unwrap();
        assert_eq!(s.values()[0], 5.0);
    }

    #[test]
    fn ihs7_hue_applies_the_four_case_rule() {
        let spec = get_variant(Variant::Ihs7);
        // v1 >= 0, v2 < 0 -> atan(v2/v1) + 2*pi
        let (h, _) = hue_saturation(&spec, &plane1(1.0), &plane1(-1.0)).unwrap();
        assert!((h.values()[0] - (2.0 * PI - PI / 4.0)).abs() < 1e-12);
        // v1 >= 0, v2 >= 0 -> atan(v2/v1)
        let (h, _) = hue_saturation(&spec, &plane1(1.0), &plane1(1.0)).unwrap();
        assert!((h.values()[0] - PI / 4.0).abs() < 1e-12);
        // v1 < 0 -> atan(v2/v1) + pi
        let (h, _) = hue_saturation(&spec, &plane1(-1.0), &plane1(1.0)).unwrap();
        assert!((h.values()[0] - (PI - PI / 4.0)).abs() < 1e-12);
        // v1 = 0, v2 < 0 -> 3*pi/2
        let (h, _) = hue_saturation(&spec, &plane1(0.0), &plane1(-2.0)).unwrap();
        assert!((h.values()[0] - 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn intensity_definitions_match_hand_values() {
        let (v, i, l) = intensity_definitions(&plane1(10.0), &plane1(20.0), &plane1(30.0)).unwrap();
        assert_eq!(v.values()[0], 30.0);
        assert_eq!(i.values()[0], 20.0);
        assert_eq!(l.values()[0], 20.0);

        let (v, i, l) = intensity_definitions(&plane1(7.0), &plane1(7.0), &plane1(7.0)).unwrap();
        assert_eq!(
            (v.values()[0], i.values()[0], l.values()[0]),
            (7.0, 7.0, 7.0)
        );
    }

    #[test]
    fn consistency_report_classifies_printed_pairs() {
        let report = consistency_report();
        assert_eq!(report.len(), 10);
        for row in &report {
            let faithful = matches!(row.variant, Variant::Ihs1 | Variant::Ihs3 | Variant::Hls);
            if faithful {
                assert!(row.printed_pair_deviation < 1e-6, "variant {}", row.variant);
                assert_eq!(row.recommendation, InverseMode::PaperExact);
            } else {
                assert!(row.printed_pair_deviation > 1e-6, "variant {}", row.variant);
                assert_eq!(row.recommendation, InverseMode::Corrected);
            }
            assert!(
                row.corrected_pair_deviation < 1e-9,
                "variant {}",
                row.variant
            );
        }
    }

    #[test]
    fn unknown_variant_name_is_rejected() {
        assert!(matches!(
            get_variant_by_name("ihs8"),
            Err(Error::UnknownVariant(_))
        ));
        assert_eq!(get_variant_by_name("YIQ").unwrap().variant, Variant::Yiq);
    }
}
