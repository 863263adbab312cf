//! Analytic reference surfaces in flat 3-space.
//!
//! Each [`AnalyticSurface`] knows its embedding, outward unit normal, normal
//! curvature and closed-form distances, so the estimators elsewhere in the
//! crate can be checked against exact values.
//!
//! Chart conventions:
//!
//! | surface  | `u`                      | `v`                     |
//! |----------|--------------------------|-------------------------|
//! | sphere   | colatitude in `[0, π]`   | longitude               |
//! | cylinder | azimuth (mod 2π)         | height along the axis   |
//! | torus    | angle around the axis    | angle around the tube   |
//!
//! Normal curvature uses the sign `K(v,v) = -(dn/ds)·v`, so a sphere with
//! outward normal has `K(v,v) = -1/R`. Every correction that consumes it
//! squares the value, so only the magnitude matters downstream.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::{Point3, UnitVec3};

/// Largest normal component a direction may carry and still count as tangent.
pub const TANGENCY_TOLERANCE: f64 = 1e-8;

/// Chart coordinates on an [`AnalyticSurface`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SurfaceParams {
    pub u: f64,
    pub v: f64,
}

impl SurfaceParams {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticSurface {
    Sphere { radius: f64 },
    Cylinder { radius: f64 },
    #[cfg(feature = "torus")]
    Torus { major: f64, minor: f64 },
}

impl AnalyticSurface {
    pub fn sphere(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Self::Sphere { radius })
    }

    pub fn cylinder(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Self::Cylinder { radius })
    }

    #[cfg(feature = "torus")]
    pub fn torus(major: f64, minor: f64) -> Result<Self> {
        check_radius(minor)?;
        if !(major.is_finite() && major > minor) {
            return Err(Error::InvalidParameter(format!(
                "torus needs major > minor > 0, got major={major}, minor={minor}"
            )));
        }
        Ok(Self::Torus { major, minor })
    }

    pub fn unit_sphere() -> Self {
        Self::Sphere { radius: 1.0 }
    }

    pub fn unit_cylinder() -> Self {
        Self::Cylinder { radius: 1.0 }
    }

    pub fn embed(&self, p: SurfaceParams) -> Point3 {
        match *self {
            Self::Sphere { radius } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                Point3::new(radius * su * cv, radius * su * sv, radius * cu)
            }
            Self::Cylinder { radius } => {
                let (s, c) = p.u.sin_cos();
                Point3::new(radius * c, radius * s, p.v)
            }
            #[cfg(feature = "torus")]
            Self::Torus { major, minor } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                let rho = major + minor * cv;
                Point3::new(rho * cu, rho * su, minor * sv)
            }
        }
    }

    /// Chart coordinates of the surface point nearest to `x` along the
    /// surface's own radial structure. Exact inverse of [`embed`](Self::embed)
    /// for points on the surface (up to the periodicity of angles).
    pub fn params_of(&self, x: Point3) -> SurfaceParams {
        match *self {
            Self::Sphere { .. } => {
                let rho = x.x.hypot(x.y);
                SurfaceParams::new(rho.atan2(x.z), x.y.atan2(x.x))
            }
            Self::Cylinder { .. } => SurfaceParams::new(x.y.atan2(x.x), x.z),
            #[cfg(feature = "torus")]
            Self::Torus { major, .. } => {
                let rho = x.x.hypot(x.y);
                SurfaceParams::new(x.y.atan2(x.x), x.z.atan2(rho - major))
            }
        }
    }

    /// Signed residual of the implicit equation at `x` (zero on the surface).
    pub fn implicit_residual(&self, x: Point3) -> f64 {
        match *self {
            Self::Sphere { radius } => x.norm() - radius,
            Self::Cylinder { radius } => x.x.hypot(x.y) - radius,
            #[cfg(feature = "torus")]
            Self::Torus { major, minor } => {
                (x.x.hypot(x.y) - major).hypot(x.z) - minor
            }
        }
    }

    /// Outward unit normal.
    pub fn unit_normal(&self, p: SurfaceParams) -> UnitVec3 {
        let n = match *self {
            Self::Sphere { .. } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                Point3::new(su * cv, su * sv, cu)
            }
            Self::Cylinder { .. } => {
                let (s, c) = p.u.sin_cos();
                Point3::new(c, s, 0.0)
            }
            #[cfg(feature = "torus")]
            Self::Torus { .. } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                Point3::new(cv * cu, cv * su, sv)
            }
        };
        UnitVec3::normalize(n).expect("analytic normal is never zero")
    }

    /// Orthonormal tangent frame `(e_u, e_v)` aligned with the chart
    /// directions. On the sphere this stays well defined at the poles.
    pub fn tangent_frame(&self, p: SurfaceParams) -> (UnitVec3, UnitVec3) {
        let (e1, e2) = match *self {
            Self::Sphere { .. } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                (Point3::new(cu * cv, cu * sv, -su), Point3::new(-sv, cv, 0.0))
            }
            Self::Cylinder { .. } => {
                let (s, c) = p.u.sin_cos();
                (Point3::new(-s, c, 0.0), Point3::new(0.0, 0.0, 1.0))
            }
            #[cfg(feature = "torus")]
            Self::Torus { .. } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                (Point3::new(-su, cu, 0.0), Point3::new(-sv * cu, -sv * su, cv))
            }
        };
        (
            UnitVec3::normalize(e1).expect("frame vector is never zero"),
            UnitVec3::normalize(e2).expect("frame vector is never zero"),
        )
    }

    /// Unit tangent at angle `angle` from the first frame vector, turning
    /// toward the second.
    pub fn tangent_direction(&self, p: SurfaceParams, angle: f64) -> UnitVec3 {
        let (e1, e2) = self.tangent_frame(p);
        let (s, c) = angle.sin_cos();
        UnitVec3::normalize(c * e1.as_point() + s * e2.as_point())
            .expect("combination of orthonormal vectors is never zero")
    }

    /// Principal curvatures along the two frame directions, with the
    /// `-(dn/ds)·v` sign convention. The frame is a principal frame for
    #[cfg_attr(not(feature = "torus"), allow(unused_variables))]
    /// every surface in the catalog.
    fn principal_curvatures(&self, p: SurfaceParams) -> (f64, f64) {
        match *self {
            Self::Sphere { radius } => (-1.0 / radius, -1.0 / radius),
            Self::Cylinder { radius } => (-1.0 / radius, 0.0),
            #[cfg(feature = "torus")]
            Self::Torus { major, minor } => {
                let cv = p.v.cos();
                (-cv / (major + minor * cv), -1.0 / minor)
            }
        }
    }

    /// Normal curvature `K(v,v)` of the second fundamental form along the
    /// unit tangent `dir`.
    pub fn normal_curvature(&self, p: SurfaceParams, dir: UnitVec3) -> Result<f64> {
        let n = self.unit_normal(p);
        let residual = n.dot(&dir.as_point());
        if residual.abs() > TANGENCY_TOLERANCE {
            return Err(Error::NotTangent { residual });
        }
        let (e1, e2) = self.tangent_frame(p);
        let (k1, k2) = self.principal_curvatures(p);
        let c1 = e1.dot(&dir.as_point());
        let c2 = e2.dot(&dir.as_point());
        Ok(k1 * c1 * c1 + k2 * c2 * c2)
    }

    /// Squared straight-line distance between two surface points.
    pub fn chord_sq(&self, p: SurfaceParams, q: SurfaceParams) -> f64 {
        (self.embed(q) - self.embed(p)).norm_sq()
    }

    /// Length of the shortest geodesic on the surface from `p` to `q`.
    ///
    /// Sphere and cylinder use closed forms. Pairs whose geodesic is not
    /// unique (antipodal points, half-turn separations on the cylinder) are
    /// rejected.
    pub fn intrinsic_dist(&self, p: SurfaceParams, q: SurfaceParams) -> Result<f64> {
        match *self {
            Self::Sphere { radius } => {
                let a = self.embed(p);
                let b = self.embed(q);
                let angle = a.cross(&b).norm().atan2(a.dot(&b));
                if PI - angle < 1e-9 {
                    return Err(Error::AmbiguousGeodesic);
                }
                Ok(radius * angle)
            }
            Self::Cylinder { radius } => {
                let dtheta = wrapped_azimuth(q.u - p.u)?;
                Ok((radius * dtheta).hypot(q.v - p.v))
            }
            #[cfg(feature = "torus")]
            Self::Torus { .. } => {
                crate::geodesic::solve_boundary_value(self, p, q).map(|(_, len)| len)
            }
        }
    }

    /// Initial unit tangent at `p` of the shortest geodesic toward `q`.
    pub fn geodesic_direction(&self, p: SurfaceParams, q: SurfaceParams) -> Result<UnitVec3> {
        match *self {
            Self::Sphere { .. } => {
                self.intrinsic_dist(p, q)?;
                let n = self.unit_normal(p).as_point();
                let b = self.embed(q);
                UnitVec3::normalize(b - b.dot(&n) * n)
            }
            Self::Cylinder { radius } => {
                let dtheta = wrapped_azimuth(q.u - p.u)?;
                let (e1, e2) = self.tangent_frame(p);
                UnitVec3::normalize(radius * dtheta * e1.as_point() + (q.v - p.v) * e2.as_point())
            }
            #[cfg(feature = "torus")]
            Self::Torus { .. } => {
                crate::geodesic::solve_boundary_value(self, p, q).map(|(dir, _)| dir)
            }
        }
    }

    /// Endpoint of the unit-speed surface geodesic of length `arclen`
    /// launched from `p` along the tangent `dir`.
    pub fn geodesic_shoot(
        &self,
        p: SurfaceParams,
        dir: UnitVec3,
        arclen: f64,
    ) -> Result<SurfaceParams> {
        crate::geodesic::shoot(self, p, dir, arclen)
    }

    /// Gradient of the implicit function at `x` and the quadratic form of
    /// its Hessian evaluated on `vel`.
    pub(crate) fn implicit_grad_hess(&self, x: Point3, vel: Point3) -> (Point3, f64) {
        match *self {
            Self::Sphere { .. } => (x, vel.norm_sq()),
            Self::Cylinder { .. } => (
                Point3::new(x.x, x.y, 0.0),
                vel.x * vel.x + vel.y * vel.y,
            ),
            #[cfg(feature = "torus")]
            Self::Torus { major, .. } => {
                let rho = x.x.hypot(x.y);
                let scale = 1.0 - major / rho;
                let grad = Point3::new(scale * x.x, scale * x.y, x.z);
                let radial = x.x * vel.x + x.y * vel.y;
                let quad = scale * (vel.x * vel.x + vel.y * vel.y)
                    + major * radial * radial / (rho * rho * rho)
                    + vel.z * vel.z;
                (grad, quad)
            }
        }
    }
}

fn check_radius(radius: f64) -> Result<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "radius must be positive and finite, got {radius}"
        )))
    }
}

/// Azimuth difference wrapped into `(-π, π]`. Exact half turns are rejected
/// because two geodesics of equal length then connect the points.
pub fn wrapped_azimuth(delta: f64) -> Result<f64> {
    let mut d = delta.rem_euclid(TAU);
    if d > PI {
        d -= TAU;
    }
    if PI - d.abs() < 1e-12 {
        return Err(Error::AmbiguousGeodesic);
    }
    Ok(d)
}
