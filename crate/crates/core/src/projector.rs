//! The linear interpolation projector and its exact C-norm over a ball.
//!
//! For nodes x⁽ʲ⁾ with Lagrange coefficients L = (l_ij), the norm over the
//! ball B(x⁽⁰⁾, R) is
//!
//! ```text
//! max over f_j = ±1 of   R·‖(Σ_j f_j l_ij)_i‖  +  |Σ_j f_j λ_j(x⁽⁰⁾)|
//! ```
//!
//! The expression is even in f, so one sign is pinned and the remaining 2ⁿ
//! assignments are walked in Gray-code order with O(n) incremental updates.
//! `norm_oracle` is an independent check: brute-force sampling of Σ|λⱼ| over
//! the boundary sphere (the function is convex, so its max over the ball is
//! attained there).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Point, Simplex};
use crate::sampling::{boundary_point, stream_rng};

/// Samples per RNG stream in the oracle; fixed so the draw sequence does not
/// depend on thread count.
const ORACLE_BLOCK: usize = 8192;

/// Exact norm together with its certificate.
#[derive(Debug, Clone)]
pub struct ProjectorReport {
    /// ‖P‖ over the ball; at least 1.
    pub norm: f64,
    /// Maximizing sign vector f, one entry per vertex; the last entry is +1.
    pub argmax_signs: Vec<i8>,
    /// Boundary point where Σ|λⱼ| attains the norm.
    pub argmax_point: Point,
}

/// Values of all n+1 basic Lagrange polynomials at x, i.e. the barycentric
/// coordinates of x.
pub fn lambda_eval(simplex: &Simplex, x: &Point) -> Result<Vec<f64>> {
    let n = simplex.dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.dim(),
        });
    }
    let l = simplex.lagrange_coefficients();
    let coords = x.coords();
    Ok((0..=n)
        .map(|j| {
            let mut acc = l.get(n, j);
            for (i, c) in coords.iter().enumerate() {
                acc += l.get(i, j) * c;
            }
            acc
        })
        .collect())
}

/// Σⱼ fvals[j]·λⱼ(x): the unique affine function agreeing with fvals at the
/// vertices, evaluated at x.
pub fn interpolate(simplex: &Simplex, fvals: &[f64], x: &Point) -> Result<f64> {
    if fvals.len() != simplex.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: simplex.num_vertices(),
            actual: fvals.len(),
        });
    }
    let lambdas = lambda_eval(simplex, x)?;
    Ok(lambdas.iter().zip(fvals).map(|(l, f)| l * f).sum())
}

/// Exact operator norm of the projector over the ball, by exhaustive
/// sign-vector enumeration. The nodes need not lie inside the ball.
///
/// Ties between sign vectors are broken by first appearance in Gray-code
/// order, so the certificate is deterministic.
pub fn norm_ball(simplex: &Simplex, ball: &Ball) -> Result<ProjectorReport> {
    let n = simplex.dim();
    if ball.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: ball.dim(),
        });
    }
    let l = simplex.lagrange_coefficients();
    let radius = ball.radius();
    let lam_center = lambda_eval(simplex, ball.center())?;

    // f ↔ −f symmetry: pin the sign of vertex n to +1 and enumerate the rest.
    // signs[j] for j < n tracked as f64 for the incremental sums.
    let mut signs = vec![1.0f64; n + 1];
    // linear[i] = Σ_j f_j l_ij, constant = Σ_j f_j λ_j(center)
    let mut linear: Vec<f64> = (0..n).map(|i| (0..=n).map(|j| l.get(i, j)).sum()).collect();
    let mut constant: f64 = lam_center.iter().sum();

    let value = |linear: &[f64], constant: f64| {
        radius * linear.iter().map(|v| v * v).sum::<f64>().sqrt() + constant.abs()
    };

    let mut best_value = value(&linear, constant);
    let mut best_code: u64 = 0;

    let total: u64 = 1 << n;
    for k in 1..total {
        // Gray step: between codes of k-1 and k exactly bit tz(k) flips.
        let j = k.trailing_zeros() as usize;
        let delta = -2.0 * signs[j];
        signs[j] = -signs[j];
        for (i, lin) in linear.iter_mut().enumerate() {
            *lin += delta * l.get(i, j);
        }
        constant += delta * lam_center[j];
        let v = value(&linear, constant);
        if v > best_value {
            best_value = v;
            best_code = k ^ (k >> 1);
        }
    }

    // Recompute at the winning signs from scratch: removes the drift the
    // incremental walk accumulates and yields the certificate point.
    let argmax_signs: Vec<i8> = (0..=n)
        .map(|j| {
            if j < n && (best_code >> j) & 1 == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    let grad: Vec<f64> = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| f64::from(argmax_signs[j]) * l.get(i, j))
                .sum()
        })
        .collect();
    let grad_norm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
    let const_term: f64 = lam_center
        .iter()
        .zip(&argmax_signs)
        .map(|(lam, s)| f64::from(*s) * lam)
        .sum();
    let norm = radius * grad_norm + const_term.abs();

    let argmax_point = if grad_norm == 0.0 {
        // all linear parts cancel; every boundary point ties, center is canonical
        ball.center().clone()
    } else {
        let dir = Point::new(grad.iter().map(|g| g / grad_norm).collect()).unwrap();
        let plus = ball.center().add_scaled(radius, &dir);
        let minus = ball.center().add_scaled(-radius, &dir);
        let sum_abs = |p: &Point| -> f64 {
            lambda_eval(simplex, p)
                .unwrap()
                .iter()
                .map(|v| v.abs())
                .sum()
        };
        if sum_abs(&plus) >= sum_abs(&minus) {
            plus
        } else {
            minus
        }
    };

    Ok(ProjectorReport {
        norm,
        argmax_signs,
        argmax_point,
    })
}

/// Monte-Carlo lower bound on the norm: max of Σ|λⱼ| over `samples` uniform
/// points of the boundary sphere. Deterministic for a fixed seed and
/// independent of thread count (fixed-size sample blocks own disjoint RNG
/// streams).
pub fn norm_oracle(simplex: &Simplex, ball: &Ball, samples: usize, seed: u64) -> Result<f64> {
    let n = simplex.dim();
    if ball.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: ball.dim(),
        });
    }
    if samples == 0 {
        return Err(Error::Config("oracle needs at least one sample".into()));
    }

    let blocks: Vec<(u64, usize)> = (0..samples.div_ceil(ORACLE_BLOCK))
        .map(|b| {
            let start = b * ORACLE_BLOCK;
            (b as u64, ORACLE_BLOCK.min(samples - start))
        })
        .collect();

    let best = blocks
        .into_par_iter()
        .map(|(block, count)| {
            let mut rng = stream_rng(seed, block);
            let mut local = f64::NEG_INFINITY;
            for _ in 0..count {
                let x = boundary_point(ball, &mut rng);
                let sum: f64 = lambda_eval(simplex, &x)
                    .expect("dimensions checked above")
                    .iter()
                    .map(|v| v.abs())
                    .sum();
                local = local.max(sum);
            }
            local
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);

    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn point(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn simplex(rows: &[&[f64]]) -> Simplex {
        Simplex::new(rows.iter().map(|r| point(r)).collect()).unwrap()
    }

    fn unit_triangle() -> Simplex {
        simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])
    }

    fn segment() -> Simplex {
        simplex(&[&[-1.0], &[1.0]])
    }

    #[test]
    fn lambda_at_centroid_is_uniform() {
        let lam = lambda_eval(&unit_triangle(), &point(&[1.0 / 3.0, 1.0 / 3.0])).unwrap();
        for v in lam {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lambda_on_segment() {
        let lam = lambda_eval(&segment(), &point(&[0.5])).unwrap();
        assert!((lam[0] - 0.25).abs() < 1e-15);
        assert!((lam[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn lambda_sums_to_one() {
        let s = simplex(&[
            &[0.21, -0.44, 0.08],
            &[0.65, 0.12, -0.37],
            &[-0.55, 0.31, 0.44],
            &[0.05, 0.72, 0.61],
        ]);
        let lam = lambda_eval(&s, &point(&[0.3, -0.9, 2.4])).unwrap();
        let sum: f64 = lam.iter().sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_dimension_mismatch() {
        assert!(matches!(
            lambda_eval(&unit_triangle(), &point(&[0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn interpolate_constant_one() {
        let s = unit_triangle();
        for p in [[0.1, 0.7], [-3.0, 2.0], [0.0, 0.0]] {
            let v = interpolate(&s, &[1.0, 1.0, 1.0], &point(&p)).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolate_reproduces_affine_function() {
        let g = |x: &[f64]| 2.0 * x[0] - 3.0 * x[1] + 1.0;
        let s = unit_triangle();
        let fvals: Vec<f64> = s.vertices().iter().map(|v| g(v.coords())).collect();
        for p in [[0.2, 0.3], [2.0, -1.0], [0.77, 0.12]] {
            let v = interpolate(&s, &fvals, &point(&p)).unwrap();
            assert!((v - g(&p)).abs() < 1e-10);
        }
    }

    #[test]
    fn interpolate_delta_gives_lambda() {
        let s = unit_triangle();
        let x = point(&[0.4, 0.1]);
        let lam = lambda_eval(&s, &x).unwrap();
        for k in 0..3 {
            let mut fvals = vec![0.0; 3];
            fvals[k] = 1.0;
            let v = interpolate(&s, &fvals, &x).unwrap();
            assert!((v - lam[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn norm_of_segment_projector_is_one() {
        let report = norm_ball(&segment(), &Ball::unit(1)).unwrap();
        assert!((report.norm - 1.0).abs() < 1e-12);
        let cert: f64 = lambda_eval(&segment(), &report.argmax_point)
            .unwrap()
            .iter()
            .map(|v| v.abs())
            .sum();
        assert!((cert - report.norm).abs() < 1e-9);
    }

    #[test]
    fn norm_of_inscribed_triangle_is_five_thirds() {
        let s = crate::regular::regular_simplex(2, &Ball::unit(2));
        let report = norm_ball(&s, &Ball::unit(2)).unwrap();
        assert!(
            (report.norm - 5.0 / 3.0).abs() < 1e-12,
            "norm {}",
            report.norm
        );
    }

    #[test]
    fn norm_of_inscribed_tetrahedron_is_two() {
        let s = crate::regular::regular_simplex(3, &Ball::unit(3));
        let report = norm_ball(&s, &Ball::unit(3)).unwrap();
        assert!((report.norm - 2.0).abs() < 1e-12, "norm {}", report.norm);
    }

    #[test]
    fn certificate_point_lies_on_boundary_and_attains_norm() {
        let ball = Ball::new(point(&[0.4, -0.2]), 1.5).unwrap();
        let s = simplex(&[&[0.3, 0.1], &[-0.5, 0.9], &[0.1, -1.2]]);
        let report = norm_ball(&s, &ball).unwrap();
        assert!((ball.center().dist(&report.argmax_point) - ball.radius()).abs() < 1e-9);
        let cert: f64 = lambda_eval(&s, &report.argmax_point)
            .unwrap()
            .iter()
            .map(|v| v.abs())
            .sum();
        assert!((cert - report.norm).abs() < 1e-9);
        assert!(report.norm >= 1.0 - 1e-12);
    }

    #[test]
    fn oracle_stays_below_exact_norm() {
        let ball = Ball::unit(2);
        for trial in 0..5 {
            let s = crate::sampling::random_simplex_in_ball(&ball, 99, trial);
            let exact = norm_ball(&s, &ball).unwrap().norm;
            let sampled = norm_oracle(&s, &ball, 20_000, 7).unwrap();
            assert!(sampled <= exact + 1e-9, "oracle {sampled} > exact {exact}");
        }
    }

    #[test]
    fn oracle_approaches_triangle_norm() {
        let s = crate::regular::regular_simplex(2, &Ball::unit(2));
        let sampled = norm_oracle(&s, &Ball::unit(2), 100_000, 0).unwrap();
        assert!((sampled - 5.0 / 3.0).abs() < 2e-3, "sampled {sampled}");
    }

    #[test]
    fn oracle_on_segment_is_one() {
        let v = norm_oracle(&segment(), &Ball::unit(1), 67, 3).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_is_deterministic() {
        let ball = Ball::unit(3);
        let s = crate::sampling::random_simplex_in_ball(&ball, 1, 0);
        let a = norm_oracle(&s, &ball, 30_000, 5).unwrap();
        let b = norm_oracle(&s, &ball, 30_000, 5).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn all_ones_signs_give_exactly_one() {
        // the f = (1,…,1) assignment reduces to the column-sum identities of L
        let ball = Ball::unit(3);
        let s = crate::sampling::random_simplex_in_ball(&ball, 4, 2);
        let report = norm_ball(&s, &ball).unwrap();
        assert!(report.norm >= 1.0 - 1e-12);
    }
}
