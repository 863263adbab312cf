//! Curvature-corrected estimates of geodesic arc-length between nearby points
//! on a surface in flat 3-space.
//!
//! A triangulation only knows straight chords between its vertices, while the
//! surface geometry lives in the lengths of geodesics on the surface. For
//! nearby points the two are related through the second fundamental form:
//!
//! ```text
//! L̃² = L̄² + (K(v,v) L̄²)² / 12 + O(L̄⁵)
//! ```
//!
//! where `L̄` is the chord, `L̃` the surface geodesic and `K(v,v)` the normal
//! curvature along the chord. The [`corrections`] module provides this and
//! two equivalent forms built from surface normals.
//!
//! The remaining modules put the corrections to work:
//!
//! * [`surfaces`]: analytic sphere, cylinder and torus with exact distances
//!   and a numerical geodesic integrator;
//! * [`rnc`]: Gaussian curvature of a vertex star from its leg lengths, via
//!   Riemann normal coordinates;
//! * [`lantern`]: area of the Schwarz lantern triangulation of a cylinder;
//! * [`sweeps`]: convergence studies and log-log order fits.
//!
//! ```
//! use arclen::corrections::correct_via_k;
//! use arclen::surfaces::{AnalyticSurface, SurfaceParams};
//!
//! let sphere = AnalyticSurface::unit_sphere();
//! let p = SurfaceParams::new(0.0, 0.0);
//! let q = SurfaceParams::new(0.3, 0.0);
//! let chord_sq = sphere.chord_sq(p, q);
//! let exact = sphere.intrinsic_dist(p, q).unwrap().powi(2);
//! let est = correct_via_k(chord_sq, 1.0).unwrap().corrected_sq;
//! // The correction removes all but about 1% of the chord error.
//! assert!((exact - est).abs() < 0.02 * (exact - chord_sq));
//! ```

pub mod corrections;
pub mod error;
mod geodesic;
pub mod geometry;
pub mod lantern;
pub mod rnc;
pub mod surfaces;
pub mod sweeps;

pub use error::{Error, Result};
pub use geodesic::STEPS_PER_UNIT_LENGTH;
pub use geometry::{Point3, UnitVec3};
