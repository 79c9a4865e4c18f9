//! Extremal points of the Lagrange sum and the identities behind minimality.
//!
//! For a simplex S with vertices x₁,…,xₙ₊₁ and an m-element index set J, let
//! g_J be the centroid of the J-vertices and c the centroid of S. The point
//!
//!   y_J = c + (1/r)·(c − g_J),   r = (1/m)·√(m − m(m−1)/n),
//!
//! lies on the boundary of the minimal-volume ellipsoid containing S, and the
//! candidates for the maximum of Σ|λⱼ| over a ball are exactly these y_J. Two
//! averaging identities tie the ‖g_J‖ and ‖y_J‖ to the vertex norms; verifying
//! them, together with min_J ‖y_J‖ ≤ R, proves that no simplex inscribed in a
//! ball of radius R beats the regular one.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Ellipsoid, Point, Simplex, GEOMETRIC_TOL};
use crate::matrix::Matrix;

/// A sorted set of m distinct vertex indices (0-based) of an n-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSelection {
    indices: Vec<usize>,
}

impl FaceSelection {
    /// Validates 1 ≤ m ≤ n, indices distinct and within 0..=n.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() || indices.len() > n {
            return Err(Error::OutOfDomain {
                name: "m",
                value: indices.len() as f64,
                min: 1.0,
                max: n as f64,
            });
        }
        let mut sorted = indices;
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidInput(format!(
                    "duplicate vertex index {} in face selection",
                    w[0]
                )));
            }
        }
        if let Some(&last) = sorted.last() {
            if last > n {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    len: n + 1,
                });
            }
        }
        Ok(Self { indices: sorted })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn m(&self) -> usize {
        self.indices.len()
    }
}

/// All C(n+1, m) selections in lexicographic order.
pub fn face_selections(n: usize, m: usize) -> Result<Vec<FaceSelection>> {
    if m < 1 || m > n {
        return Err(Error::OutOfDomain {
            name: "m",
            value: m as f64,
            min: 1.0,
            max: n as f64,
        });
    }
    Ok((0..=n)
        .combinations(m)
        .map(|indices| FaceSelection { indices })
        .collect())
}

/// r = (1/m)·√(m − m(m−1)/n), the distance from the simplex centroid to g_J
/// relative to the circumradius when the simplex is regular.
pub fn ratio_r(n: usize, m: usize) -> Result<f64> {
    if m < 1 || m > n {
        return Err(Error::OutOfDomain {
            name: "m",
            value: m as f64,
            min: 1.0,
            max: n as f64,
        });
    }
    let (nf, mf) = (n as f64, m as f64);
    Ok((mf - mf * (mf - 1.0) / nf).sqrt() / mf)
}

/// Centroid of the selected vertices.
pub fn face_centroid(simplex: &Simplex, sel: &FaceSelection) -> Point {
    let n = simplex.dim();
    let mut coords = vec![0.0; n];
    for &j in sel.indices() {
        for (k, c) in simplex.vertex(j).coords().iter().enumerate() {
            coords[k] += c;
        }
    }
    let inv = 1.0 / sel.m() as f64;
    for c in &mut coords {
        *c *= inv;
    }
    Point::new(coords).expect("vertex coordinates are finite")
}

/// y_J = c + (1/r)·(c − g_J), the extremal point for the selection J.
pub fn y_point(simplex: &Simplex, sel: &FaceSelection) -> Result<Point> {
    let r = ratio_r(simplex.dim(), sel.m())?;
    let c = simplex.centroid();
    let g = face_centroid(simplex, sel);
    Ok(c.add_scaled(1.0 / r, &c.sub(&g)))
}

/// Point where the line through g_J and c meets the opposite face's affine
/// hull: h = c + (m/(n+1−m))·(c − g_J). Used to check that y_J, c, g_J are
/// collinear with the documented ratios.
pub fn opposite_face_point(simplex: &Simplex, sel: &FaceSelection) -> Point {
    let n = simplex.dim();
    let m = sel.m();
    let c = simplex.centroid();
    let g = face_centroid(simplex, sel);
    c.add_scaled(m as f64 / (n + 1 - m) as f64, &c.sub(&g))
}

/// Minimal-volume ellipsoid containing the simplex.
///
/// It is the image of the minimal ellipsoid of a reference regular simplex
/// (its circumscribed ball) under the affine map sending reference vertices to
/// the given ones, so its center is the centroid and its shape matrix comes
/// from solving the reference vertex system.
pub fn minimal_ellipsoid(simplex: &Simplex) -> Result<Ellipsoid> {
    let n = simplex.dim();
    let center = simplex.centroid();
    let reference = crate::regular::regular_simplex(n, &Ball::unit(n));

    // W solves S_ref · W = Y, rows of Y are xⱼ − centroid; the inverse of the
    // reference vertex matrix is its Lagrange matrix.
    let mut y = Matrix::zeros(n + 1, n);
    for j in 0..=n {
        let v = simplex.vertex(j);
        for k in 0..n {
            y.set(j, k, v.coords()[k] - center.coords()[k]);
        }
    }
    let w = reference.lagrange_coefficients().mul(&y);

    // The affine map is x ↦ A·x + centroid with A = (linear rows of W)ᵀ.
    let mut map = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            map.set(i, k, w.get(k, i));
        }
    }
    Ellipsoid::new(center, map)
}

/// Left-hand side Σ_J ‖g_J − o‖² and the identity's right-hand side
/// (1/(mn))·C(n,m)·Σⱼ‖xⱼ − o‖² + ((m−1)(n+1))/(mn)·C(n+1,m)·‖c − o‖²,
/// with norms taken about the origin point `o`.
pub fn face_sum_identity(simplex: &Simplex, m: usize, origin: &Point) -> Result<(f64, f64)> {
    let n = simplex.dim();
    if origin.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: origin.dim(),
        });
    }
    let selections = face_selections(n, m)?;
    let lhs: f64 = selections
        .iter()
        .map(|sel| {
            let g = face_centroid(simplex, sel);
            g.dist(origin).powi(2)
        })
        .sum();

    let (nf, mf) = (n as f64, m as f64);
    let vertex_sum: f64 = (0..=n)
        .map(|j| simplex.vertex(j).dist(origin).powi(2))
        .sum();
    let c_sq = simplex.centroid().dist(origin).powi(2);
    let rhs = binomial(n, m) / (mf * nf) * vertex_sum
        + (mf - 1.0) * (nf + 1.0) / (mf * nf) * binomial(n + 1, m) * c_sq;
    Ok((lhs, rhs))
}

/// Mean of ‖y_J − o‖² over all selections and the identity's right-hand side
/// (1/(n+1))·Σⱼ‖xⱼ − o‖², with norms about `o`.
pub fn mean_square_identity(simplex: &Simplex, m: usize, origin: &Point) -> Result<(f64, f64)> {
    let n = simplex.dim();
    if origin.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: origin.dim(),
        });
    }
    let selections = face_selections(n, m)?;
    let mean: f64 = selections
        .iter()
        .map(|sel| {
            let y = y_point(simplex, sel).expect("m validated by face_selections");
            y.dist(origin).powi(2)
        })
        .sum::<f64>()
        / selections.len() as f64;
    let vertex_mean: f64 = (0..=n)
        .map(|j| simplex.vertex(j).dist(origin).powi(2))
        .sum::<f64>()
        / (n + 1) as f64;
    Ok((mean, vertex_mean))
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// One extremal point in a [`ExtremalReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalEntry {
    /// The selection J, 0-based sorted vertex indices.
    pub subset: Vec<usize>,
    pub point: Vec<f64>,
    /// Distance from the ball center.
    pub distance: f64,
}

/// Outcome of checking the extremal-point identities for one (simplex, m).
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub m: usize,
    pub points: Vec<ExtremalEntry>,
    /// min_J ‖y_J − ball center‖.
    pub min_norm: f64,
    /// Selection attaining the minimum (first in lexicographic order on ties).
    pub witness: Vec<usize>,
    /// (mean of ‖y_J‖², vertex mean) about the ball center; equal when the
    /// identities hold.
    pub mean_square: (f64, f64),
}

/// Computes all y_J for the given m, checks both averaging identities about
/// the ball center, and reports min_J ‖y_J − center‖.
///
/// The simplex vertices must lie in the ball (within a small tolerance);
/// the theorem says nothing about nodes outside it.
pub fn verify_theorem1(simplex: &Simplex, ball: &Ball, m: usize) -> Result<ExtremalReport> {
    let n = simplex.dim();
    if ball.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: ball.dim(),
        });
    }
    for (j, v) in simplex.vertices().iter().enumerate() {
        let d = ball.center().dist(v);
        if d > ball.radius() + GEOMETRIC_TOL {
            return Err(Error::NodesOutsideBall {
                index: j,
                distance: d,
                radius: ball.radius(),
            });
        }
    }

    let selections = face_selections(n, m)?;
    let mut points = Vec::with_capacity(selections.len());
    let mut min_norm = f64::INFINITY;
    let mut witness = Vec::new();
    for sel in &selections {
        let y = y_point(simplex, sel)?;
        let distance = ball.center().dist(&y);
        if distance < min_norm {
            min_norm = distance;
            witness = sel.indices().to_vec();
        }
        points.push(ExtremalEntry {
            subset: sel.indices().to_vec(),
            point: y.coords().to_vec(),
            distance,
        });
    }

    let mean_square = mean_square_identity(simplex, m, ball.center())?;
    Ok(ExtremalReport {
        m,
        points,
        min_norm,
        witness,
        mean_square,
    })
}
