//! Gaussian curvature of a vertex star from its leg lengths, via Riemann
//! normal coordinates centred on the star's middle vertex.
//!
//! In two dimensions the squared geodesic length between two vertices with
//! normal coordinates `xi`, `xj` is, to fourth order,
//!
//! ```text
//! L²(i,j) = |xi - xj|² - (K/3) (xi × xj)²
//! ```
//!
//! where `K` is the Gaussian curvature at the centre and `×` is the scalar
//! 2-D cross product. Spokes run from the centre (the origin) so their cross
//! term vanishes and `L²(p,i) = |xi|²`. Given all spoke and rim lengths of an
//! `m`-valent star, the `2m` equations determine the `2m` unknowns (neighbour
//! coordinates and `K`, less one rotation fixed by pinning the first
//! neighbour to the positive first axis).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Riemann normal coordinates `(a, b)` of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coord2 {
    pub a: f64,
    pub b: f64,
}

impl Coord2 {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn cross(&self, other: &Coord2) -> f64 {
        self.a * other.b - self.b * other.a
    }
}

/// Squared geodesic length between two vertices in normal coordinates.
pub fn rnc_leg_sq(xi: Coord2, xj: Coord2, k: f64) -> f64 {
    let da = xi.a - xj.a;
    let db = xi.b - xj.b;
    let c = xi.cross(&xj);
    da * da + db * db - k / 3.0 * c * c
}

/// Leg lengths of an `m`-valent vertex star, neighbours ordered
/// counterclockwise. `rim_sq[i]` joins neighbour `i` to neighbour `i+1 mod m`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexStar {
    spoke_sq: Vec<f64>,
    rim_sq: Vec<f64>,
}

impl VertexStar {
    pub fn new(spoke_sq: Vec<f64>, rim_sq: Vec<f64>) -> Result<Self> {
        let m = spoke_sq.len();
        if m < 3 {
            return Err(Error::InvalidStar(format!("need at least 3 neighbours, got {m}")));
        }
        if rim_sq.len() != m {
            return Err(Error::InvalidStar(format!(
                "{m} spokes but {} rim legs",
                rim_sq.len()
            )));
        }
        if let Some(bad) = spoke_sq
            .iter()
            .chain(&rim_sq)
            .find(|l| !(l.is_finite() && **l > 0.0))
        {
            return Err(Error::InvalidStar(format!("non-positive squared length {bad}")));
        }
        for i in 0..m {
            let s0 = spoke_sq[i].sqrt();
            let s1 = spoke_sq[(i + 1) % m].sqrt();
            let r = rim_sq[i].sqrt();
            if !(r < s0 + s1 && r > (s0 - s1).abs() && s0 < r + s1) {
                return Err(Error::InvalidStar(format!(
                    "triangle {i} violates the triangle inequality"
                )));
            }
        }
        Ok(Self { spoke_sq, rim_sq })
    }

    /// Legs generated from known normal coordinates and curvature.
    pub fn from_coords(coords: &[Coord2], k: f64) -> Result<Self> {
        let m = coords.len();
        let spoke_sq = coords.iter().map(|x| x.a * x.a + x.b * x.b).collect();
        let rim_sq = (0..m)
            .map(|i| rnc_leg_sq(coords[i], coords[(i + 1) % m], k))
            .collect();
        Self::new(spoke_sq, rim_sq)
    }

    /// The four-fold symmetric star on the unit sphere with neighbours at
    /// height `sqrt(1 - xbar²)` below a pole. With `corrected`, each chord is
    /// replaced by its curvature-corrected estimate `L̄² + L̄⁴/12`.
    pub fn symmetric_sphere(xbar: f64, corrected: bool) -> Result<Self> {
        let (spoke, rim) = symmetric_sphere_legs(xbar, corrected)?;
        Self::new(vec![spoke; 4], vec![rim; 4])
    }

    pub fn valence(&self) -> usize {
        self.spoke_sq.len()
    }

    pub fn spoke_sq(&self) -> &[f64] {
        &self.spoke_sq
    }

    pub fn rim_sq(&self) -> &[f64] {
        &self.rim_sq
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RncSolution {
    pub coords: Vec<Coord2>,
    /// Gaussian curvature at the centre vertex.
    pub k: f64,
    /// Largest absolute equation residual at the returned point.
    pub residual_norm: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricStarResult {
    pub xbar: f64,
    pub zbar: f64,
    /// Squared normal coordinate of each neighbour.
    pub xtilde_sq: f64,
    pub k: f64,
    pub corrected: bool,
}

fn check_xbar(xbar: f64) -> Result<()> {
    if xbar > 0.0 && xbar < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("xbar must lie in (0, 1), got {xbar}")))
    }
}

/// Spoke and rim squared lengths of the symmetric sphere star.
pub fn symmetric_sphere_legs(xbar: f64, corrected: bool) -> Result<(f64, f64)> {
    check_xbar(xbar)?;
    let zbar = (1.0 - xbar * xbar).sqrt();
    // 1 - zbar without cancellation.
    let drop = xbar * xbar / (1.0 + zbar);
    let spoke = xbar * xbar + drop * drop;
    let rim = 2.0 * xbar * xbar;
    Ok(if corrected {
        (spoke + spoke * spoke / 12.0, rim + rim * rim / 12.0)
    } else {
        (spoke, rim)
    })
}

/// Closed-form solution of the symmetric four-triangle sphere star.
///
/// By symmetry the neighbours sit at `(±x̃, 0)` and `(0, ±x̃)`, the spoke
/// equation gives `x̃²` directly and the rim equation
/// `L²_rim = 2x̃² - K x̃⁴/3` gives `K`. Uncorrected chords yield exactly
/// `K = 3/2` for every `xbar`; corrected ones yield `K = 1 + O(xbar²)`.
pub fn solve_symmetric_sphere_star(xbar: f64, corrected: bool) -> Result<SymmetricStarResult> {
    let (xtilde_sq, _) = symmetric_sphere_legs(xbar, corrected)?;
    // 2x̃² - L²_rim expanded by hand: the leading 2x̄² terms cancel exactly,
    // which keeps full precision for small stars.
    let x2 = xbar * xbar;
    let zbar = (1.0 - x2).sqrt();
    let drop = x2 / (1.0 + zbar);
    let d2 = drop * drop;
    let excess = if corrected {
        2.0 * d2 + ((2.0 * x2 + d2) * d2 - x2 * x2) / 6.0
    } else {
        2.0 * d2
    };
    let k = 3.0 * excess / (xtilde_sq * xtilde_sq);
    Ok(SymmetricStarResult {
        xbar,
        zbar: (1.0 - xbar * xbar).sqrt(),
        xtilde_sq,
        k,
        corrected,
    })
}

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_NEWTON_ITERATIONS: usize = 50;

// Unknown vector layout: [a0, a1, b1, a2, b2, ..., a_{m-1}, b_{m-1}, K].
fn unpack(z: &DVector<f64>, m: usize) -> (Vec<Coord2>, f64) {
    let mut coords = Vec::with_capacity(m);
    coords.push(Coord2::new(z[0], 0.0));
    for i in 1..m {
        coords.push(Coord2::new(z[2 * i - 1], z[2 * i]));
    }
    (coords, z[2 * m - 1])
}

fn a_index(i: usize) -> usize {
    if i == 0 {
        0
    } else {
        2 * i - 1
    }
}

fn b_index(i: usize) -> Option<usize> {
    (i > 0).then(|| 2 * i)
}

fn residuals(star: &VertexStar, coords: &[Coord2], k: f64) -> DVector<f64> {
    let m = star.valence();
    DVector::from_fn(2 * m, |r, _| {
        if r < m {
            let x = coords[r];
            x.a * x.a + x.b * x.b - star.spoke_sq[r]
        } else {
            let i = r - m;
            rnc_leg_sq(coords[i], coords[(i + 1) % m], k) - star.rim_sq[i]
        }
    })
}

fn jacobian(coords: &[Coord2], k: f64) -> DMatrix<f64> {
    let m = coords.len();
    let mut jac = DMatrix::zeros(2 * m, 2 * m);
    for (i, x) in coords.iter().enumerate() {
        jac[(i, a_index(i))] = 2.0 * x.a;
        if let Some(bi) = b_index(i) {
            jac[(i, bi)] = 2.0 * x.b;
        }
    }
    for i in 0..m {
        let j = (i + 1) % m;
        let (xi, xj) = (coords[i], coords[j]);
        let c = xi.cross(&xj);
        let w = 2.0 * k / 3.0 * c;
        let row = m + i;
        jac[(row, a_index(i))] += 2.0 * (xi.a - xj.a) - w * xj.b;
        jac[(row, a_index(j))] += -2.0 * (xi.a - xj.a) + w * xi.b;
        if let Some(bi) = b_index(i) {
            jac[(row, bi)] += 2.0 * (xi.b - xj.b) + w * xj.a;
        }
        if let Some(bj) = b_index(j) {
            jac[(row, bj)] += -2.0 * (xi.b - xj.b) - w * xi.a;
        }
        jac[(row, 2 * m - 1)] = -c * c / 3.0;
    }
    jac
}

/// Flat layout: radii from the spokes, consecutive angles from the law of
/// cosines on the first `m - 1` triangles.
fn flat_layout(star: &VertexStar) -> Vec<Coord2> {
    let m = star.valence();
    let mut theta = 0.0f64;
    let mut coords = Vec::with_capacity(m);
    for i in 0..m {
        let r = star.spoke_sq[i].sqrt();
        coords.push(Coord2::new(r * theta.cos(), r * theta.sin()));
        if i + 1 < m {
            let s0 = star.spoke_sq[i];
            let s1 = star.spoke_sq[i + 1];
            let cos_phi = (s0 + s1 - star.rim_sq[i]) / (2.0 * (s0 * s1).sqrt());
            theta += cos_phi.clamp(-1.0, 1.0).acos();
        }
    }
    coords
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Newton solve of the full leg-length system for a general vertex star.
///
/// Starts from the flat layout with curvature `k_init` and iterates until the
/// largest equation residual is at most `tol`. The returned coordinates have
/// `coords[0] = (a0, 0)` with `a0 > 0` and `coords[1].b >= 0`.
pub fn solve_star_newton(star: &VertexStar, k_init: f64, tol: f64) -> Result<RncSolution> {
    let m = star.valence();
    let init = flat_layout(star);
    let mut z = DVector::zeros(2 * m);
    z[0] = init[0].a;
    for (i, x) in init.iter().enumerate().skip(1) {
        z[2 * i - 1] = x.a;
        z[2 * i] = x.b;
    }
    z[2 * m - 1] = k_init;

    let mut residual_norm = f64::INFINITY;
    for iterations in 0..=MAX_NEWTON_ITERATIONS {
        let (coords, k) = unpack(&z, m);
        let f = residuals(star, &coords, k);
        residual_norm = max_abs(&f);
        if !residual_norm.is_finite() {
            break;
        }
        if residual_norm <= tol {
            return Ok(canonical(coords, k, residual_norm, iterations));
        }
        if iterations == MAX_NEWTON_ITERATIONS {
            break;
        }
        let step = jacobian(&coords, k)
            .lu()
            .solve(&f)
            .filter(|s| s.iter().all(|x| x.is_finite()))
            .ok_or(Error::SingularJacobian)?;
        z -= step;
    }
    Err(Error::NonConvergence {
        residual_norm,
        iterations: MAX_NEWTON_ITERATIONS,
    })
}

fn canonical(mut coords: Vec<Coord2>, k: f64, residual_norm: f64, iterations: usize) -> RncSolution {
    // A half turn and a reflection across the first axis both preserve every
    // equation while keeping coords[0] on the first axis.
    if coords[0].a < 0.0 {
        for x in &mut coords {
            x.a = -x.a;
            x.b = -x.b;
        }
    }
    if coords[1].b < 0.0 {
        for x in &mut coords {
            x.b = -x.b;
        }
    }
    RncSolution {
        coords,
        k,
        residual_norm,
        iterations,
    }
}
