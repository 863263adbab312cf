//! Curvature corrections that turn a squared chord length into an estimate
//! of the squared geodesic length on the surface.
//!
//! All three operators add a non-negative fourth-order term to the chord:
//!
//! * [`correct_via_k`]: `(K(v,v) L̄²)² / 12`, from the normal curvature along
//!   the chord direction;
//! * [`correct_via_normals`]: `((n_p - n_q)·Δx)² / 12`, from the unit
//!   normals at the two endpoints;
//! * [`correct_via_normal_flow`]: `(dL̄²/dn)² / 48`, from the rate at which
//!   the squared chord changes when the surface is pushed along its normal.
//!
//! The remainder after correction is fifth order in the chord length.

use crate::error::{Error, Result};
use crate::geometry::{Point3, UnitVec3};

/// Which correction produced a [`CorrectionReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionMethod {
    ViaK,
    ViaNormals,
    ViaNormalFlow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionReport {
    /// Squared chord length `L̄²`.
    pub chord_sq: f64,
    /// Non-negative curvature correction.
    pub correction: f64,
    /// Estimate of the squared intrinsic length, `chord_sq + correction`.
    pub corrected_sq: f64,
    pub method: CorrectionMethod,
}

impl CorrectionReport {
    fn new(chord_sq: f64, correction: f64, method: CorrectionMethod) -> Self {
        Self {
            chord_sq,
            correction,
            corrected_sq: chord_sq + correction,
            method,
        }
    }
}

fn check_chord(chord_sq: f64) -> Result<()> {
    if chord_sq.is_finite() && chord_sq >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeLength(chord_sq))
    }
}

/// Correction from the normal curvature `k_vv = K(v,v)` along the chord.
pub fn correct_via_k(chord_sq: f64, k_vv: f64) -> Result<CorrectionReport> {
    check_chord(chord_sq)?;
    if !k_vv.is_finite() {
        return Err(Error::InvalidParameter(format!("normal curvature {k_vv}")));
    }
    let t = k_vv * chord_sq;
    Ok(CorrectionReport::new(chord_sq, t * t / 12.0, CorrectionMethod::ViaK))
}

/// Correction from the endpoint unit normals and the chord displacement
/// `delta_x = x_q - x_p`. `chord_sq` must agree with `|delta_x|²` to within
/// `1e-9` (relative for chords longer than one).
pub fn correct_via_normals(
    chord_sq: f64,
    n_p: UnitVec3,
    n_q: UnitVec3,
    delta_x: Point3,
) -> Result<CorrectionReport> {
    check_chord(chord_sq)?;
    let delta_sq = delta_x.norm_sq();
    if !delta_x.is_finite() || (delta_sq - chord_sq).abs() > 1e-9 * chord_sq.max(1.0) {
        return Err(Error::InconsistentChord { chord_sq, delta_sq });
    }
    let t = (n_p.as_point() - n_q.as_point()).dot(&delta_x);
    Ok(CorrectionReport::new(
        chord_sq,
        t * t / 12.0,
        CorrectionMethod::ViaNormals,
    ))
}

/// Correction from `dlsq_dn`, the derivative of the squared chord with
/// respect to arclength along the normal flow.
pub fn correct_via_normal_flow(chord_sq: f64, dlsq_dn: f64) -> Result<CorrectionReport> {
    check_chord(chord_sq)?;
    if !dlsq_dn.is_finite() {
        return Err(Error::InvalidParameter(format!("dL²/dn = {dlsq_dn}")));
    }
    Ok(CorrectionReport::new(
        chord_sq,
        dlsq_dn * dlsq_dn / 48.0,
        CorrectionMethod::ViaNormalFlow,
    ))
}
