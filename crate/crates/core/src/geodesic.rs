//! Numerical geodesics: fixed-step RK4 integration of the constrained
//! geodesic equation in ambient coordinates.
//!
//! For a surface `F(x) = 0` a unit-speed geodesic satisfies
//! `x'' = -(x'ᵀ ∇²F x' / |∇F|²) ∇F`, which is chart free and therefore well
//! behaved at the poles of the sphere.

use crate::error::{Error, Result};
use crate::geometry::{Point3, UnitVec3};
use crate::surfaces::{AnalyticSurface, SurfaceParams, TANGENCY_TOLERANCE};

/// Integration steps per unit of arclength.
pub const STEPS_PER_UNIT_LENGTH: f64 = 1024.0;

#[derive(Clone, Copy)]
struct State {
    x: Point3,
    v: Point3,
}

fn acceleration(surface: &AnalyticSurface, x: Point3, v: Point3) -> Point3 {
    let (grad, quad) = surface.implicit_grad_hess(x, v);
    (-quad / grad.norm_sq()) * grad
}

fn rk4_step(surface: &AnalyticSurface, s: State, h: f64) -> State {
    let k1x = s.v;
    let k1v = acceleration(surface, s.x, s.v);
    let x2 = s.x + (0.5 * h) * k1x;
    let v2 = s.v + (0.5 * h) * k1v;
    let k2x = v2;
    let k2v = acceleration(surface, x2, v2);
    let x3 = s.x + (0.5 * h) * k2x;
    let v3 = s.v + (0.5 * h) * k2v;
    let k3x = v3;
    let k3v = acceleration(surface, x3, v3);
    let x4 = s.x + h * k3x;
    let v4 = s.v + h * k3v;
    let k4x = v4;
    let k4v = acceleration(surface, x4, v4);
    let w = h / 6.0;
    State {
        x: s.x + w * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        v: s.v + w * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    }
}

pub(crate) fn shoot(
    surface: &AnalyticSurface,
    p: SurfaceParams,
    dir: UnitVec3,
    arclen: f64,
) -> Result<SurfaceParams> {
    if !(arclen.is_finite() && arclen >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "arclength must be finite and non-negative, got {arclen}"
        )));
    }
    let residual = surface.unit_normal(p).dot(&dir.as_point());
    if residual.abs() > TANGENCY_TOLERANCE {
        return Err(Error::NotTangent { residual });
    }
    if arclen == 0.0 {
        return Ok(p);
    }

    let steps = (arclen * STEPS_PER_UNIT_LENGTH).ceil().max(1.0) as usize;
    let h = arclen / steps as f64;
    let mut state = State {
        x: surface.embed(p),
        v: dir.as_point(),
    };
    for i in 0..steps {
        state = rk4_step(surface, state, h);
        if !(state.x.is_finite() && state.v.is_finite()) {
            return Err(Error::ChartEscape {
                arclen: (i + 1) as f64 * h,
            });
        }
    }
    Ok(surface.params_of(state.x))
}

/// Two-point boundary value problem by shooting: Newton iteration on the
/// launch angle and arclength, with a finite-difference Jacobian.
///
/// Returns the launch direction at `p` and the geodesic length.
#[cfg(feature = "torus")]
pub(crate) fn solve_boundary_value(
    surface: &AnalyticSurface,
    p: SurfaceParams,
    q: SurfaceParams,
) -> Result<(UnitVec3, f64)> {
    const MAX_ITER: usize = 40;
    const TOL: f64 = 1e-11;

    let xp = surface.embed(p);
    let xq = surface.embed(q);
    let chord = xq - xp;
    if chord.norm() == 0.0 {
        return Ok((surface.tangent_frame(p).0, 0.0));
    }
    let (e1, e2) = surface.tangent_frame(p);
    let (f1, f2) = surface.tangent_frame(q);

    let miss = |angle: f64, len: f64| -> Result<[f64; 2]> {
        let dir = surface.tangent_direction(p, angle);
        let end = surface.embed(shoot(surface, p, dir, len)?);
        let d = end - xq;
        Ok([f1.dot(&d), f2.dot(&d)])
    };

    let mut angle = e2.dot(&chord).atan2(e1.dot(&chord));
    let mut len = chord.norm();
    for _ in 0..MAX_ITER {
        let r = miss(angle, len)?;
        if r[0].hypot(r[1]) < TOL {
            return Ok((surface.tangent_direction(p, angle), len));
        }
        let da = 1e-7;
        let dl = 1e-7 * len.max(1e-3);
        let ra = miss(angle + da, len)?;
        let rl = miss(angle, len + dl)?;
        let j = [
            [(ra[0] - r[0]) / da, (rl[0] - r[0]) / dl],
            [(ra[1] - r[1]) / da, (rl[1] - r[1]) / dl],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return Err(Error::AmbiguousGeodesic);
        }
        angle -= (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        len -= (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::AmbiguousGeodesic);
        }
    }
    Err(Error::AmbiguousGeodesic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, TAU};

    #[test]
    fn quarter_great_circle_from_pole_hits_equator() {
        let s = AnalyticSurface::unit_sphere();
        let pole = SurfaceParams::new(0.0, 0.0);
        for k in 0..6 {
            let dir = s.tangent_direction(pole, k as f64);
            let end = s.embed(s.geodesic_shoot(pole, dir, FRAC_PI_2).unwrap());
            assert!(end.z.abs() < 1e-9, "z = {}", end.z);
        }
    }

    #[test]
    fn cylinder_circumference_closes() {
        let c = AnalyticSurface::unit_cylinder();
        let p = SurfaceParams::new(0.3, 0.25);
        let (circ, _) = c.tangent_frame(p);
        let end = c.geodesic_shoot(p, circ, TAU).unwrap();
        let dtheta = (end.u - p.u).rem_euclid(TAU);
        assert!(dtheta.min(TAU - dtheta) < 1e-9);
        assert!((end.v - p.v).abs() < 1e-12);
    }

    #[test]
    fn lands_on_sphere_star_neighbour() {
        let s = AnalyticSurface::unit_sphere();
        let pole = SurfaceParams::new(0.0, 0.0);
        let a = SurfaceParams::new(0.6f64.asin(), 0.0);
        let end = s
            .geodesic_shoot(pole, UnitVec3::X, 0.643_501_108_793_284_4)
            .unwrap();
        assert!((s.embed(end) - s.embed(a)).norm() < 1e-8);
    }

    #[test]
    fn zero_length_is_identity_and_negative_rejected() {
        let s = AnalyticSurface::unit_sphere();
        let p = SurfaceParams::new(0.4, 0.1);
        let d = s.tangent_direction(p, 0.2);
        assert_eq!(s.geodesic_shoot(p, d, 0.0).unwrap(), p);
        assert!(s.geodesic_shoot(p, d, -1.0).is_err());
        assert!(s.geodesic_shoot(p, s.unit_normal(p), 0.5).is_err());
    }

    #[cfg(feature = "torus")]
    #[test]
    fn torus_boundary_value_matches_outer_equator() {
        // The outer equator is a geodesic circle of radius major + minor.
        let t = AnalyticSurface::torus(2.0, 0.5).unwrap();
        let p = SurfaceParams::new(0.0, 0.0);
        let q = SurfaceParams::new(0.3, 0.0);
        let d = t.intrinsic_dist(p, q).unwrap();
        assert!((d - 2.5 * 0.3).abs() < 1e-9, "d = {d}");
        // Meridian circles are geodesics too.
        let q = SurfaceParams::new(0.0, 0.8);
        let d = t.intrinsic_dist(p, q).unwrap();
        assert!((d - 0.5 * 0.8).abs() < 1e-9, "d = {d}");
    }

    #[cfg(feature = "torus")]
    #[test]
    fn torus_shoot_round_trip() {
        let t = AnalyticSurface::torus(2.0, 0.5).unwrap();
        let p = SurfaceParams::new(0.2, 1.0);
        let dir = t.tangent_direction(p, 0.7);
        let q = t.geodesic_shoot(p, dir, 0.6).unwrap();
        let d = t.intrinsic_dist(p, q).unwrap();
        assert!((d - 0.6).abs() < 1e-8, "d = {d}");
        let back = t.geodesic_direction(p, q).unwrap();
        assert!((back.as_point() - dir.as_point()).norm() < 1e-6);
    }
}
