//! The arc, its intersection with `[-1, 1]`, extremal points and contour plots.

mod arc;
mod extremal;
mod preimage;

use alloc::vec::Vec;

pub use arc::{trace_arc, ArcTrace};
pub(crate) use extremal::level_zeros;
pub use extremal::{extremal_points, survey_extremals, ExtremalReport, EXTREMAL_MERGE_RADIUS};
pub use preimage::{trace_real_preimage, zero_contours, Polyline, Window};

use crate::elliptic::EllipticContext;
use crate::error::{Error, Result};
use crate::param;
use crate::pell::{k_star, z_star_forms, TnTupleConfig};

/// Half-width of the band around `z* = 1` classified as tangent.
pub const TANGENT_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    /// The arc crosses `[-1, 1]` at `z* < 1`.
    Crossing,
    /// The arc touches the interval at its endpoint `z* = 1`.
    Tangent,
    /// The arc and the interval do not meet.
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionClass {
    pub kind: IntersectionKind,
    pub z_star: f64,
    /// `alpha <= 1` forces the arc to meet the interval; false flags a violation.
    pub alpha_rule_holds: bool,
}

pub fn classify(cfg: &TnTupleConfig) -> IntersectionClass {
    let z = cfg.z_star();
    let kind = if (z - 1.0).abs() <= TANGENT_BAND {
        IntersectionKind::Tangent
    } else if z < 1.0 {
        IntersectionKind::Crossing
    } else {
        IntersectionKind::Disjoint
    };
    let alpha_rule_holds = cfg.a3().re > 1.0 || kind != IntersectionKind::Disjoint;
    IntersectionClass {
        kind,
        z_star: z,
        alpha_rule_holds,
    }
}

/// One point of the curve `z* = 1` in the endpoint plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCurveSample {
    pub lambda: f64,
    pub k_star: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `|z*(k*, lambda) - 1|`.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub samples: Vec<BoundaryCurveSample>,
    /// Rotation numbers that produced no sample, with the reason.
    pub skipped: Vec<(f64, Error)>,
}

fn boundary_sample(lambda: f64) -> Result<BoundaryCurveSample> {
    if !(lambda > 0.01 && lambda < 0.49) {
        return Err(Error::Domain("boundary samples need lambda in (0.01, 0.49)"));
    }
    let k = k_star(lambda, 1e-12)?;
    let ctx = EllipticContext::with_default_tol(k)?;
    let e = param::forward_with(&ctx, lambda)?;
    let defect = (z_star_forms(&ctx, lambda)?.0 - 1.0).abs();
    Ok(BoundaryCurveSample {
        lambda,
        k_star: k,
        alpha: e.alpha(),
        beta: e.beta(),
        defect,
    })
}

/// Samples the curve separating crossing from disjoint configurations.
///
/// Output is sorted by `lambda`; failed samples are collected in `skipped`.
pub fn boundary_curve(lambdas: &[f64]) -> BoundaryCurve {
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for lambda in sorted {
        match boundary_sample(lambda) {
            Ok(s) => samples.push(s),
            Err(e) => skipped.push((lambda, e)),
        }
    }
    BoundaryCurve { samples, skipped }
}
