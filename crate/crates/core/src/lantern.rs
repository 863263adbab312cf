//! Schwarz lantern on the unit cylinder (radius 1, height 1).
//!
//! The cylinder is cut into `2M` horizontal slices and `2N` azimuthal
//! slices, giving `4NM` congruent isosceles triangles. A representative
//! triangle has vertices
//!
//! ```text
//! p = (1, 0, 0)
//! q = (cos π/N, sin π/N, 1/(2M))
//! r = (cos 2π/N, sin 2π/N, 0)
//! ```
//!
//! Its flat area, computed from chord lengths, converges to the cylinder's
//! area only when `M/N² → 0`. Using curvature-corrected leg lengths instead
//! improves the error from `O(N⁻²)` to `O(N⁻⁴)` in that regime.

use std::f64::consts::{PI, TAU};

use crate::corrections::correct_via_normals;
use crate::error::{Error, Result};
use crate::surfaces::{AnalyticSurface, SurfaceParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanternSpec {
    n: u64,
    m: u64,
}

impl LanternSpec {
    /// `n >= 3` half the number of azimuthal slices, `m >= 1` half the
    /// number of horizontal slices.
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("lantern needs N >= 3, got {n}")));
        }
        if m < 1 {
            return Err(Error::InvalidParameter(format!("lantern needs M >= 1, got {m}")));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn triangle_count(&self) -> u64 {
        4 * self.n * self.m
    }

    /// Chart coordinates `(azimuth, height)` of the representative vertices.
    pub fn vertices(&self) -> [SurfaceParams; 3] {
        let n = self.n as f64;
        let m = self.m as f64;
        [
            SurfaceParams::new(0.0, 0.0),
            SurfaceParams::new(PI / n, 1.0 / (2.0 * m)),
            SurfaceParams::new(TAU / n, 0.0),
        ]
    }
}

/// Leg lengths and areas of the representative triangle `pqr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleGeometry {
    pub lpr_sq: f64,
    pub lpq_sq: f64,
    pub lpr_sq_corr: f64,
    pub lpq_sq_corr: f64,
    /// Area of the triangle drawn on the cylinder, `π/(2NM)`.
    pub area_exact: f64,
    pub area_flat_sq: f64,
    pub area_corr_sq: f64,
}

/// Squared area of an isosceles triangle with base `base_sq` and equal legs
/// `leg_sq` (all squared lengths).
pub fn isosceles_area_sq(base_sq: f64, leg_sq: f64) -> f64 {
    base_sq * (4.0 * leg_sq - base_sq) / 16.0
}

pub fn triangle_geometry(spec: LanternSpec) -> TriangleGeometry {
    let cyl = AnalyticSurface::unit_cylinder();
    let n = spec.n as f64;
    let m = spec.m as f64;
    let [p, q, r] = spec.vertices();

    let lpr_sq = 4.0 * (PI / n).sin().powi(2);
    let lpq_sq = 4.0 * (PI / (2.0 * n)).sin().powi(2) + 1.0 / (4.0 * m * m);

    let corrected = |a: SurfaceParams, b: SurfaceParams, chord_sq: f64| {
        correct_via_normals(
            chord_sq,
            cyl.unit_normal(a),
            cyl.unit_normal(b),
            cyl.embed(b) - cyl.embed(a),
        )
        .expect("closed-form chord agrees with the embedded vertices")
        .corrected_sq
    };
    let lpr_sq_corr = corrected(p, r, lpr_sq);
    let lpq_sq_corr = corrected(p, q, lpq_sq);

    TriangleGeometry {
        lpr_sq,
        lpq_sq,
        lpr_sq_corr,
        lpq_sq_corr,
        area_exact: PI / (2.0 * n * m),
        area_flat_sq: isosceles_area_sq(lpr_sq, lpq_sq),
        area_corr_sq: isosceles_area_sq(lpr_sq_corr, lpq_sq_corr),
    }
}

/// Open interval `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }
}

/// Bounds on the fractional per-triangle error `(A² - Ā²)/A²` with flat legs.
pub fn fractional_bounds_flat(spec: LanternSpec) -> Bounds {
    let n = spec.n as f64;
    let m = spec.m as f64;
    let upper = PI.powi(2) / (3.0 * n * n);
    Bounds {
        lower: upper - PI.powi(4) / (45.0 * n.powi(4)) * (2.0 + 45.0 * m * m),
        upper,
    }
}

/// Bounds on `S² - S̄²` with flat legs.
pub fn total_bounds_flat(spec: LanternSpec) -> Bounds {
    let n = spec.n as f64;
    let m = spec.m as f64;
    let upper = 4.0 * PI.powi(4) / (3.0 * n * n);
    Bounds {
        lower: upper - 4.0 * PI.powi(6) / (45.0 * n.powi(4)) * (2.0 + 45.0 * m * m),
        upper,
    }
}

/// Bounds on `S² - S̃²` with corrected legs.
pub fn total_bounds_corrected(spec: LanternSpec) -> Bounds {
    let n = spec.n as f64;
    let m = spec.m as f64;
    let upper = 32.0 * PI.powi(6) / (45.0 * n.powi(4));
    Bounds {
        lower: upper - 8.0 * PI.powi(8) / (189.0 * n.powi(6)) * (6.0 + 63.0 * m * m),
        upper,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanternReport {
    pub spec: LanternSpec,
    pub triangle: TriangleGeometry,
    /// Area of the cylinder, `2π`.
    pub area: f64,
    pub area_flat: f64,
    pub area_corr: f64,
    /// `S² - S̄²`.
    pub err_flat: f64,
    /// `S² - S̃²`.
    pub err_corr: f64,
    /// `(A² - Ā²)/A²` for one triangle.
    pub frac_err_flat: f64,
    pub bounds_frac_flat: Bounds,
    pub bounds_flat: Bounds,
    pub bounds_corr: Bounds,
    pub holds_frac_flat: bool,
    pub holds_flat: bool,
    pub holds_corr: bool,
}

pub fn lantern_report(spec: LanternSpec) -> LanternReport {
    let tri = triangle_geometry(spec);
    let count = spec.triangle_count() as f64;
    let area = TAU;
    let area_flat = count * tri.area_flat_sq.sqrt();
    let area_corr = count * tri.area_corr_sq.sqrt();
    let err_flat = area * area - area_flat * area_flat;
    let err_corr = area * area - area_corr * area_corr;
    let a2 = tri.area_exact * tri.area_exact;
    let frac_err_flat = (a2 - tri.area_flat_sq) / a2;

    let bounds_frac_flat = fractional_bounds_flat(spec);
    let bounds_flat = total_bounds_flat(spec);
    let bounds_corr = total_bounds_corrected(spec);
    LanternReport {
        spec,
        triangle: tri,
        area,
        area_flat,
        area_corr,
        err_flat,
        err_corr,
        frac_err_flat,
        bounds_frac_flat,
        bounds_flat,
        bounds_corr,
        holds_frac_flat: bounds_frac_flat.contains(frac_err_flat),
        holds_flat: bounds_flat.contains(err_flat),
        holds_corr: bounds_corr.contains(err_corr),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec(n: u64, m: u64) -> LanternSpec {
        LanternSpec::new(n, m).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(LanternSpec::new(2, 1).is_err());
        assert!(LanternSpec::new(3, 0).is_err());
        assert_eq!(spec(11, 5).triangle_count(), 220);
    }

    // Reference values from a 40-digit evaluation of the closed forms.
    #[test]
    fn geometry_n8_m4() {
        let t = triangle_geometry(spec(8, 4));
        assert_abs_diff_eq!(t.lpr_sq, 0.585_786_437_626_905, epsilon = 1e-15);
        assert_abs_diff_eq!(t.lpq_sq, 0.167_865_934_977_426_5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.area_exact, 0.049_087_385_212_340_52, epsilon = 1e-16);
        assert_abs_diff_eq!(t.area_flat_sq.sqrt(), 0.056_007_031_751_449_24, epsilon = 1e-15);
        assert_abs_diff_eq!(t.lpr_sq_corr, 0.614_381_916_835_873_3, epsilon = 1e-15);
        assert_abs_diff_eq!(t.lpq_sq_corr, 0.169_797_376_834_326_6, epsilon = 1e-15);
        assert_abs_diff_eq!(t.area_corr_sq.sqrt(), 0.049_885_250_624_423_52, epsilon = 1e-15);
    }

    #[test]
    fn flat_area_matches_cross_product() {
        // Independent route: half the norm of (q - p) × (r - p).
        let cyl = AnalyticSurface::unit_cylinder();
        for &(n, m) in &[(3, 1), (8, 4), (40, 3), (17, 60)] {
            let s = spec(n, m);
            let [p, q, r] = s.vertices().map(|v| cyl.embed(v));
            let area = 0.5 * (q - p).cross(&(r - p)).norm();
            let t = triangle_geometry(s);
            assert_abs_diff_eq!(t.area_flat_sq.sqrt(), area, epsilon = 1e-13);
        }
    }

    #[test]
    fn slanted_leg_tends_to_rim_half_chord() {
        let t = triangle_geometry(spec(8, 1_000_000));
        assert_abs_diff_eq!(t.lpq_sq, 4.0 * (PI / 16.0).sin().powi(2), epsilon = 1e-12);
    }

    #[test]
    fn report_n8_m4() {
        let r = lantern_report(spec(8, 4));
        assert_abs_diff_eq!(r.area_flat, 7.168_900_064_185_502, epsilon = 1e-12);
        assert_abs_diff_eq!(r.area_corr, 6.385_312_079_926_21, epsilon = 1e-12);
        assert_abs_diff_eq!(r.err_flat, -11.914_710_525_921_466, epsilon = 1e-10);
        assert_abs_diff_eq!(r.err_corr, -1.293_792_753_694_149, epsilon = 1e-10);
        assert_abs_diff_eq!(r.bounds_flat.lower, -13.034_077_047_932_5, epsilon = 1e-10);
        assert_abs_diff_eq!(r.bounds_flat.upper, 2.029_356_063_208_38, epsilon = 1e-12);
        assert_abs_diff_eq!(r.bounds_corr.lower, -1.386_642_018_371_81, epsilon = 1e-12);
        assert_abs_diff_eq!(r.bounds_corr.upper, 0.166_907_846_106_824, epsilon = 1e-12);
        assert!(r.holds_flat && r.holds_corr && r.holds_frac_flat);
    }

    #[test]
    fn report_many_slices_one_ring() {
        let r = lantern_report(spec(100, 1));
        assert!(r.area_flat < TAU);
        assert!(r.err_flat > 0.0 && r.err_flat < 4.0 * PI.powi(4) / 3e4);
        assert_abs_diff_eq!(r.bounds_flat.upper, 0.012_987_878_804_533_66, epsilon = 1e-15);
    }

    #[test]
    fn exact_triangles_tile_the_cylinder() {
        for n in [3, 8, 31, 128] {
            for m in [1, 2, 9, 64] {
                let t = triangle_geometry(spec(n, m));
                assert!((t.area_exact * (4 * n * m) as f64 - TAU).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn total_bounds_scale_fractional_bounds() {
        let s = spec(16, 2);
        let f = fractional_bounds_flat(s);
        let t = total_bounds_flat(s);
        assert_abs_diff_eq!(t.upper, TAU * TAU * f.upper, epsilon = 1e-14);
        assert_abs_diff_eq!(t.lower, TAU * TAU * f.lower, epsilon = 1e-14);
    }

    #[test]
    fn corrected_legs_dominate() {
        for n in 3..40 {
            for m in [1, 3, 10, 1000] {
                let t = triangle_geometry(spec(n, m));
                assert!(t.lpr_sq_corr >= t.lpr_sq);
                assert!(t.lpq_sq_corr >= t.lpq_sq);
            }
        }
    }
}
