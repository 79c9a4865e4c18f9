//! Simplex/ball/ellipsoid data model.
//!
//! A simplex owns its vertex matrix (rows are vertex coordinates padded with
//! a trailing 1) and the inverse of that matrix, whose columns carry the
//! coefficients of the basic Lagrange polynomials λⱼ. Everything is immutable
//! after construction, so values can be shared freely across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Scale-invariant degeneracy threshold: a simplex is rejected when
/// |det S| ≤ DEGENERACY_EPS · (max |coordinate| + 1)ⁿ.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Max entry residual allowed in S·L − I after inversion.
pub const LAGRANGE_RESIDUAL_TOL: f64 = 1e-10;

/// Default tolerance for geometric membership tests.
pub const GEOMETRIC_TOL: f64 = 1e-9;

/// Default tolerance for algebraic identities (partition of unity, δ-property).
pub const ALGEBRAIC_TOL: f64 = 1e-10;

/// A point of ℝⁿ. Entries are finite and n ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput(
                "point needs at least one coordinate".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(
                "point coordinates must be finite".into(),
            ));
        }
        Ok(Point { coords })
    }

    /// Origin of ℝⁿ.
    pub fn origin(n: usize) -> Self {
        Point {
            coords: vec![0.0; n],
        }
    }

    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim());
        Point::from_vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim());
        Point::from_vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, t: f64) -> Point {
        Point::from_vec(self.coords.iter().map(|c| c * t).collect())
    }

    /// self + t·other
    pub fn add_scaled(&self, t: f64, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim());
        Point::from_vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + t * b)
                .collect(),
        )
    }
}

/// Euclidean ball ‖x − center‖ ≤ radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Ball { center, radius })
    }

    /// Unit ball centered at the origin of ℝⁿ.
    pub fn unit(n: usize) -> Self {
        Ball {
            center: Point::origin(n),
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Membership within an explicit slack: ‖x − center‖ ≤ radius + tol.
    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        Ok(self.center.dist(x) <= self.radius + tol)
    }
}

/// Nondegenerate simplex: n+1 vertices spanning ℝⁿ, kept in input order.
///
/// Construction inverts the vertex matrix once and certifies the result:
/// the determinant must clear the scale-invariant degeneracy threshold and
/// S·L must reproduce the identity to [`LAGRANGE_RESIDUAL_TOL`].
#[derive(Debug, Clone)]
pub struct Simplex {
    vertices: Vec<Point>,
    dim: usize,
    vertex_matrix: Matrix,
    lagrange: Matrix,
    det: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidInput(
                "a simplex needs at least two vertices".into(),
            ));
        }
        let n = vertices.len() - 1;
        for v in &vertices {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: v.dim(),
                });
            }
        }

        let vertex_matrix = build_vertex_matrix(&vertices);
        let scale = vertices
            .iter()
            .flat_map(|v| v.coords().iter())
            .fold(0.0f64, |acc, c| acc.max(c.abs()))
            + 1.0;
        let threshold = DEGENERACY_EPS * scale.powi(n as i32);

        let (lagrange, det) = match vertex_matrix.invert_with_det(0.0) {
            Ok(pair) => pair,
            Err(partial) => {
                return Err(Error::DegenerateSimplex {
                    det: partial.abs(),
                    threshold,
                })
            }
        };
        if det.abs() <= threshold {
            return Err(Error::DegenerateSimplex {
                det: det.abs(),
                threshold,
            });
        }
        if vertex_matrix.residual_from_identity(&lagrange) > LAGRANGE_RESIDUAL_TOL {
            // invertible on paper but too ill-conditioned to trust
            return Err(Error::DegenerateSimplex {
                det: det.abs(),
                threshold,
            });
        }

        Ok(Simplex {
            vertices,
            dim: n,
            vertex_matrix,
            lagrange,
            det,
        })
    }

    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// n + 1.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> &Point {
        &self.vertices[j]
    }

    /// The (n+1)×(n+1) matrix whose row j is (x⁽ʲ⁾₁, …, x⁽ʲ⁾ₙ, 1).
    pub fn vertex_matrix(&self) -> &Matrix {
        &self.vertex_matrix
    }

    /// L = S⁻¹. Column j holds the coefficients of λⱼ: the first n rows are
    /// the linear part, the last row the constant term. Column sums are
    /// 0 for the first n rows and 1 for the last one, forced by Σⱼ λⱼ ≡ 1.
    pub fn lagrange_coefficients(&self) -> &Matrix {
        &self.lagrange
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn centroid(&self) -> Point {
        let n = self.dim;
        let mut acc = vec![0.0; n];
        for v in &self.vertices {
            for (a, c) in acc.iter_mut().zip(v.coords()) {
                *a += c;
            }
        }
        let k = self.vertices.len() as f64;
        Point::from_vec(acc.into_iter().map(|a| a / k).collect())
    }
}

fn build_vertex_matrix(vertices: &[Point]) -> Matrix {
    let n = vertices.len() - 1;
    let mut m = Matrix::zeros(n + 1, n + 1);
    for (j, v) in vertices.iter().enumerate() {
        for (i, c) in v.coords().iter().enumerate() {
            m.set(j, i, *c);
        }
        m.set(j, n, 1.0);
    }
    m
}

/// Image of the unit ball under x ↦ center + M·x, with M invertible.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: Point,
    map: Matrix,
    inv_map: Matrix,
}

impl Ellipsoid {
    pub fn new(center: Point, map: Matrix) -> Result<Self> {
        let n = center.dim();
        if map.rows() != n || map.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: map.rows(),
            });
        }
        let (inv_map, det) = map
            .invert_with_det(0.0)
            .map_err(|_| Error::InvalidInput("ellipsoid map is singular".into()))?;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::InvalidInput("ellipsoid map is singular".into()));
        }
        Ok(Ellipsoid {
            center,
            map,
            inv_map,
        })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// |det M|; the volume is this times the volume of the unit ball.
    pub fn det_abs(&self) -> f64 {
        self.map.det(0.0).abs()
    }

    /// center + M·u. For ‖u‖ = 1 this parameterizes the boundary.
    pub fn map_point(&self, u: &Point) -> Result<Point> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim(),
            });
        }
        let img = self.map.mul_vec(u.coords());
        Ok(self.center.add(&Point::from_vec(img)))
    }

    /// ‖M⁻¹(x − center)‖: 1 on the boundary, < 1 inside.
    pub fn membership_radius(&self, x: &Point) -> Result<f64> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        let d = x.sub(&self.center);
        Ok(Point::from_vec(self.inv_map.mul_vec(d.coords())).norm())
    }

    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        Ok(self.membership_radius(x)? <= 1.0 + tol)
    }
}

/// On-disk simplex format: `{"n": 2, "vertices": [[..], [..], [..]]}` with
/// exactly n+1 rows of n numbers each. Wrong counts are errors, not padding.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexJson {
    pub n: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl SimplexJson {
    pub fn from_simplex(s: &Simplex) -> Self {
        SimplexJson {
            n: s.dim(),
            vertices: s.vertices().iter().map(|v| v.coords().to_vec()).collect(),
        }
    }

    pub fn into_simplex(self) -> Result<Simplex> {
        if self.n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        if self.vertices.len() != self.n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} vertices for n = {}, got {}",
                self.n + 1,
                self.n,
                self.vertices.len()
            )));
        }
        let mut points = Vec::with_capacity(self.vertices.len());
        for (j, row) in self.vertices.into_iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::InvalidInput(format!(
                    "vertex {} has {} coordinates, expected {}",
                    j,
                    row.len(),
                    self.n
                )));
            }
            points.push(Point::new(row)?);
        }
        Simplex::new(points)
    }
}

/// On-disk ball format: `{"center": [..], "radius": r}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallJson {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BallJson {
    pub fn from_ball(b: &Ball) -> Self {
        BallJson {
            center: b.center().coords().to_vec(),
            radius: b.radius(),
        }
    }

    pub fn into_ball(self) -> Result<Ball> {
        Ball::new(Point::new(self.center)?, self.radius)
    }
}

pub fn simplex_from_json(text: &str) -> Result<Simplex> {
    let parsed: SimplexJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("simplex JSON: {e}")))?;
    parsed.into_simplex()
}

pub fn ball_from_json(text: &str) -> Result<Ball> {
    let parsed: BallJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("ball JSON: {e}")))?;
    parsed.into_ball()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn point(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    pub(crate) fn simplex(rows: &[&[f64]]) -> Simplex {
        Simplex::new(rows.iter().map(|r| point(r)).collect()).unwrap()
    }

    fn unit_triangle() -> Simplex {
        simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])
    }

    #[test]
    fn vertex_matrix_of_unit_triangle() {
        let s = unit_triangle();
        let m = s.vertex_matrix();
        let expected = [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), *want);
            }
        }
    }

    #[test]
    fn vertex_matrix_of_segment() {
        let s = simplex(&[&[-1.0], &[1.0]]);
        assert_eq!(s.vertex_matrix().row(0), &[-1.0, 1.0]);
        assert_eq!(s.vertex_matrix().row(1), &[1.0, 1.0]);
    }

    #[test]
    fn vertex_matrix_last_column_is_ones() {
        let s = simplex(&[
            &[0.3, -2.0, 1.1],
            &[4.0, 0.0, 0.5],
            &[1.0, 1.0, 1.0],
            &[-1.0, 2.0, -3.0],
        ]);
        for j in 0..4 {
            assert_eq!(s.vertex_matrix().get(j, 3), 1.0);
        }
    }

    #[test]
    fn lagrange_coefficients_of_unit_triangle() {
        // λ₁ = 1 − x₁ − x₂, λ₂ = x₁, λ₃ = x₂ (columns of L)
        let s = unit_triangle();
        let l = s.lagrange_coefficients();
        let expected = [[-1.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [1.0, 0.0, 0.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((l.get(i, j) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lagrange_coefficients_of_segment() {
        // λ₁ = (1 − x)/2, λ₂ = (1 + x)/2
        let s = simplex(&[&[-1.0], &[1.0]]);
        let l = s.lagrange_coefficients();
        assert!((l.get(0, 0) + 0.5).abs() < 1e-15);
        assert!((l.get(1, 0) - 0.5).abs() < 1e-15);
        assert!((l.get(0, 1) - 0.5).abs() < 1e-15);
        assert!((l.get(1, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn random_3simplex_inverse_multiplies_back() {
        let s = simplex(&[
            &[0.21, -0.44, 0.08],
            &[0.65, 0.12, -0.37],
            &[-0.55, 0.31, 0.44],
            &[0.05, 0.72, 0.61],
        ]);
        let residual = s
            .vertex_matrix()
            .residual_from_identity(s.lagrange_coefficients());
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn degenerate_simplex_is_rejected() {
        // three collinear points
        let r = Simplex::new(vec![
            point(&[0.0, 0.0]),
            point(&[1.0, 1.0]),
            point(&[2.0, 2.0]),
        ]);
        match r {
            Err(Error::DegenerateSimplex { det, threshold }) => {
                assert!(det <= threshold);
            }
            other => panic!("expected DegenerateSimplex, got {other:?}"),
        }
    }

    #[test]
    fn degeneracy_threshold_is_scale_invariant() {
        // same nearly-flat shape at two very different scales
        let flat = |t: f64| {
            Simplex::new(vec![
                point(&[0.0, 0.0]),
                point(&[t, 0.0]),
                point(&[t / 2.0, t * 1e-14]),
            ])
        };
        assert!(flat(1.0).is_err());
        assert!(flat(1e6).is_err());
    }

    #[test]
    fn centroid_examples() {
        let s = unit_triangle();
        let c = s.centroid();
        assert!((c.coords()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.coords()[1] - 1.0 / 3.0).abs() < 1e-15);

        let seg = simplex(&[&[-1.0], &[1.0]]);
        assert_eq!(seg.centroid().coords()[0], 0.0);
    }

    #[test]
    fn ball_contains_boundary_and_tolerance() {
        let b = Ball::unit(2);
        assert!(b.contains(&point(&[1.0, 0.0]), 0.0).unwrap());
        assert!(!b.contains(&point(&[1.1, 0.0]), 0.0).unwrap());
        assert!(b.contains(&point(&[1.0 + 5e-10, 0.0]), 1e-9).unwrap());
        assert!(matches!(
            b.contains(&point(&[0.0]), 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ball_rejects_nonpositive_radius() {
        assert!(Ball::new(Point::origin(2), 0.0).is_err());
        assert!(Ball::new(Point::origin(2), -1.0).is_err());
    }

    #[test]
    fn point_rejects_bad_input() {
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0, f64::NAN]).is_err());
        assert!(Point::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn ellipsoid_membership_matches_parameterization() {
        let map = Matrix::from_rows(&[vec![2.0, 0.3], vec![-0.1, 0.8]]).unwrap();
        let e = Ellipsoid::new(point(&[0.5, -1.0]), map).unwrap();
        let u = point(&[0.6, -0.8]); // unit vector
        let x = e.map_point(&u).unwrap();
        let r = e.membership_radius(&x).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        assert!(e.contains(&x, 1e-10).unwrap());
    }

    #[test]
    fn ellipsoid_rejects_singular_map() {
        let map = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(Ellipsoid::new(point(&[0.0, 0.0]), map).is_err());
    }

    #[test]
    fn simplex_json_round_trip_and_strictness() {
        let s = unit_triangle();
        let text = serde_json::to_string(&SimplexJson::from_simplex(&s)).unwrap();
        let back = simplex_from_json(&text).unwrap();
        assert_eq!(back.vertices(), s.vertices());

        // wrong vertex count
        assert!(simplex_from_json(r#"{"n":2,"vertices":[[0,0],[1,0]]}"#).is_err());
        // wrong coordinate count
        assert!(simplex_from_json(r#"{"n":2,"vertices":[[0,0],[1,0],[0,1,5]]}"#).is_err());
        // unknown field
        assert!(simplex_from_json(r#"{"n":2,"vertices":[[0,0],[1,0],[0,1]],"x":1}"#).is_err());
    }

    #[test]
    fn ball_json_round_trip() {
        let text = r#"{"center":[3.0,-1.0],"radius":2.5}"#;
        let b = ball_from_json(text).unwrap();
        assert_eq!(b.radius(), 2.5);
        assert_eq!(b.center().coords(), &[3.0, -1.0]);
        assert!(ball_from_json(r#"{"center":[0,0],"radius":-1}"#).is_err());
    }
}
