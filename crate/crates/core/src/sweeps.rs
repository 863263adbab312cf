//! Convergence studies and log-log order fitting.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::corrections::correct_via_k;
use crate::error::{Error, Result};
use crate::geometry::{Point3, UnitVec3};
use crate::lantern::{lantern_report, LanternSpec};
use crate::rnc::solve_symmetric_sphere_star;
use crate::surfaces::{AnalyticSurface, SurfaceParams};

/// One row of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub scale: f64,
    pub value: f64,
    pub error: f64,
    pub label: String,
}

/// Least-squares line through `(ln scale, ln |error|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

pub fn slope_fit(records: &[SweepRecord]) -> Result<SlopeFit> {
    let n = records.len();
    if n < 3 {
        return Err(Error::SlopeFit(format!("need at least 3 points, got {n}")));
    }
    if let Some(r) = records.iter().find(|r| !(r.scale > 0.0 && r.scale.is_finite())) {
        return Err(Error::SlopeFit(format!("non-positive scale {}", r.scale)));
    }
    if let Some(r) = records.iter().find(|r| !(r.error != 0.0 && r.error.is_finite())) {
        return Err(Error::SlopeFit(format!("zero or non-finite error at scale {}", r.scale)));
    }
    let positive = records[0].error > 0.0;
    if records.iter().any(|r| (r.error > 0.0) != positive) {
        return Err(Error::SlopeFit("errors change sign".into()));
    }

    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.scale.ln(), r.error.abs().ln()))
        .collect();
    let nf = n as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::SlopeFit("all scales coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(SlopeFit {
        slope,
        intercept,
        r_squared,
        n_points: n,
    })
}

fn sort_by_scale(records: &mut [SweepRecord]) {
    records.sort_by(|a, b| a.scale.partial_cmp(&b.scale).unwrap_or(Ordering::Equal));
}

/// Truncation check of the normal-curvature correction at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderSample {
    pub scale: f64,
    pub chord_sq: f64,
    pub intrinsic_sq: f64,
    pub k_vv: f64,
    pub correction: f64,
    /// `intrinsic_sq - chord_sq - correction`.
    pub remainder: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderScan {
    pub samples: Vec<RemainderSample>,
    pub records: Vec<SweepRecord>,
    /// `None` when the remainder vanishes identically (flat directions).
    pub fit: Option<SlopeFit>,
}

/// For each scale, shoots a geodesic of that length from `p` along `dir`,
/// then compares the exact squared intrinsic length between the endpoints
/// with the chord plus its normal-curvature correction.
pub fn remainder_scan(
    surface: &AnalyticSurface,
    p: SurfaceParams,
    dir: UnitVec3,
    scales: &[f64],
) -> Result<RemainderScan> {
    let n_p = surface.unit_normal(p).as_point();
    let mut samples = Vec::with_capacity(scales.len());
    for &scale in scales {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
        }
        let q = surface.geodesic_shoot(p, dir, scale)?;
        let intrinsic = surface.intrinsic_dist(p, q)?;
        let chord: Point3 = surface.embed(q) - surface.embed(p);
        let chord_sq = chord.norm_sq();
        let tangent = UnitVec3::normalize(chord - chord.dot(&n_p) * n_p)?;
        let k_vv = surface.normal_curvature(p, tangent)?;
        let corr = correct_via_k(chord_sq, k_vv)?;
        let intrinsic_sq = intrinsic * intrinsic;
        samples.push(RemainderSample {
            scale,
            chord_sq,
            intrinsic_sq,
            k_vv,
            correction: corr.correction,
            remainder: intrinsic_sq - corr.corrected_sq,
        });
    }
    samples.sort_by(|a, b| a.scale.partial_cmp(&b.scale).unwrap_or(Ordering::Equal));

    let records: Vec<SweepRecord> = samples
        .iter()
        .map(|s| SweepRecord {
            scale: s.scale,
            value: s.chord_sq + s.correction,
            error: s.remainder,
            label: "remainder".into(),
        })
        .collect();
    let fit = if records.iter().all(|r| r.error == 0.0) {
        None
    } else {
        Some(slope_fit(&records)?)
    };
    Ok(RemainderScan {
        samples,
        records,
        fit,
    })
}

/// Curvature estimates of the symmetric sphere star over a range of sizes.
/// The error is measured against `3/2` for raw chords (the value they
/// converge to) and against the true curvature `1` for corrected chords.
pub fn sphere_star_sweep(xbars: &[f64], corrected: bool) -> Result<Vec<SweepRecord>> {
    let target = if corrected { 1.0 } else { 1.5 };
    let label = if corrected { "corrected" } else { "uncorrected" };
    let mut records = xbars
        .iter()
        .map(|&x| {
            let r = solve_symmetric_sphere_star(x, corrected)?;
            Ok(SweepRecord {
                scale: x,
                value: r.k,
                error: r.k - target,
                label: label.into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_by_scale(&mut records);
    Ok(records)
}

/// How the number of horizontal slices grows with `N` in a lantern sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    MConst(u64),
    MEqN,
    MEqN2,
    MEqN3,
}

impl Schedule {
    pub fn m_for(&self, n: u64) -> Result<u64> {
        let m = match *self {
            Schedule::MConst(m) => Some(m),
            Schedule::MEqN => Some(n),
            Schedule::MEqN2 => n.checked_mul(n),
            Schedule::MEqN3 => n.checked_mul(n).and_then(|n2| n2.checked_mul(n)),
        };
        m.ok_or_else(|| Error::InvalidParameter(format!("M overflows for N = {n}")))
    }

    /// Whether `M/N² → 0` along the schedule.
    pub fn is_convergent(&self) -> bool {
        matches!(self, Schedule::MConst(_) | Schedule::MEqN)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::MConst(m) => write!(f, "m-const:{m}"),
            Schedule::MEqN => f.write_str("m-eq-n"),
            Schedule::MEqN2 => f.write_str("m-eq-n2"),
            Schedule::MEqN3 => f.write_str("m-eq-n3"),
        }
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m-eq-n" => Ok(Schedule::MEqN),
            "m-eq-n2" => Ok(Schedule::MEqN2),
            "m-eq-n3" => Ok(Schedule::MEqN3),
            _ => {
                let m = s
                    .strip_prefix("m-const:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown schedule `{s}`")))?;
                Ok(Schedule::MConst(m))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LanternSweep {
    /// `scale = N`, `value` the triangulated area, `error = S² - area²`.
    pub records: Vec<SweepRecord>,
    /// Fitted only for convergent schedules with at least three points.
    pub fit: Option<SlopeFit>,
}

pub fn lantern_schedule_sweep(schedule: Schedule, ns: &[u64], corrected: bool) -> Result<LanternSweep> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("N values must be strictly ascending".into()));
    }
    let label = if corrected { "corrected" } else { "flat" };
    let records = ns
        .iter()
        .map(|&n| {
            let spec = LanternSpec::new(n, schedule.m_for(n)?)?;
            let r = lantern_report(spec);
            let (value, error) = if corrected {
                (r.area_corr, r.err_corr)
            } else {
                (r.area_flat, r.err_flat)
            };
            Ok(SweepRecord {
                scale: n as f64,
                value,
                error,
                label: format!("{label} M={}", spec.m()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = if schedule.is_convergent() && records.len() >= 3 {
        Some(slope_fit(&records)?)
    } else {
        None
    };
    Ok(LanternSweep { records, fit })
}
