use std::f64::consts::PI;

use arclen::corrections::correct_via_normals;
use arclen::lantern::{triangle_geometry, LanternSpec};
use arclen::surfaces::{AnalyticSurface, SurfaceParams};
use proptest::prelude::*;

fn sphere_or_cylinder() -> impl Strategy<Value = (AnalyticSurface, SurfaceParams)> {
    (0.5..2.0f64, any::<bool>(), 0.2..(PI - 0.2), -3.0..3.0f64).prop_map(|(r, sph, u, v)| {
        if sph {
            (AnalyticSurface::sphere(r).unwrap(), SurfaceParams::new(u, v))
        } else {
            (AnalyticSurface::cylinder(r).unwrap(), SurfaceParams::new(v, u))
        }
    })
}

proptest! {
    #[test]
    fn chord_never_exceeds_geodesic(
        (surface, p) in sphere_or_cylinder(),
        angle in 0.0..std::f64::consts::TAU,
        len in 0.01..1.0f64,
    ) {
        let q = surface.geodesic_shoot(p, surface.tangent_direction(p, angle), len).unwrap();
        let d = surface.intrinsic_dist(p, q).unwrap();
        prop_assert!(surface.chord_sq(p, q) <= d * d + 1e-12);
    }

    #[test]
    fn normals_are_unit_and_orthogonal_to_frame((surface, p) in sphere_or_cylinder()) {
        let n = surface.unit_normal(p);
        let (e1, e2) = surface.tangent_frame(p);
        prop_assert!((n.as_point().norm() - 1.0).abs() < 1e-14);
        prop_assert!(n.dot(&e1.as_point()).abs() < 1e-14);
        prop_assert!(n.dot(&e2.as_point()).abs() < 1e-14);
    }

    #[test]
    fn sphere_curvature_is_isotropic(r in 0.5..2.0f64, u in 0.1..3.0f64, v in -3.0..3.0f64, angle in 0.0..6.3f64) {
        let s = AnalyticSurface::sphere(r).unwrap();
        let p = SurfaceParams::new(u, v);
        let k = s.normal_curvature(p, s.tangent_direction(p, angle)).unwrap();
        prop_assert!((k + 1.0 / r).abs() < 1e-12);
    }

    #[test]
    fn corrected_sphere_legs_match_arcs(r in 0.5..2.0f64, u in 0.2..1.2f64, du in 0.01..0.3f64) {
        let s = AnalyticSurface::sphere(r).unwrap();
        let (p, q) = (SurfaceParams::new(u, 0.1), SurfaceParams::new(u + du, 0.1));
        let chord_sq = s.chord_sq(p, q);
        let rep = correct_via_normals(chord_sq, s.unit_normal(p), s.unit_normal(q), s.embed(q) - s.embed(p)).unwrap();
        let d = s.intrinsic_dist(p, q).unwrap();
        // Remainder is sixth order in the arc.
        prop_assert!((rep.corrected_sq - d * d).abs() <= d.powi(6) / (60.0 * r.powi(4)));
    }

    #[test]
    fn corrected_lantern_legs_dominate(n in 3u64..200, m in 1u64..50) {
        let t = triangle_geometry(LanternSpec::new(n, m).unwrap());
        prop_assert!(t.lpr_sq_corr >= t.lpr_sq);
        prop_assert!(t.lpq_sq_corr >= t.lpq_sq);
    }
}
