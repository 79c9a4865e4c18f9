//! Cross-checks of the exact norm against sampling, invariance, and bounds.

use ballproj::sampling::random_simplex_in_ball;
use ballproj::{norm_ball, norm_oracle, regular_simplex, theta, Ball, Point, Simplex};

/// Product of Givens rotations with fixed angles; orthogonal by construction.
fn rotate(coords: &[f64], angle: f64) -> Vec<f64> {
    let mut v = coords.to_vec();
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let a = angle * ((i + 2 * j + 1) as f64);
            let (s, c) = a.sin_cos();
            let (vi, vj) = (v[i], v[j]);
            v[i] = c * vi - s * vj;
            v[j] = s * vi + c * vj;
        }
    }
    v
}

#[test]
fn oracle_never_exceeds_the_exact_norm() {
    for n in [2usize, 3, 4] {
        let ball = Ball::unit(n);
        for trial in 0..10 {
            let s = random_simplex_in_ball(&ball, 100 + n as u64, trial);
            let exact = norm_ball(&s, &ball).unwrap().norm;
            let sampled = norm_oracle(&s, &ball, 20_000, 1).unwrap();
            assert!(
                sampled <= exact + 1e-9,
                "n={n} trial={trial}: sampled {sampled} > exact {exact}"
            );
        }
    }
}

#[test]
fn oracle_converges_to_the_exact_norm() {
    let ball = Ball::unit(2);
    for trial in 0..20 {
        let s = random_simplex_in_ball(&ball, 7, trial);
        let exact = norm_ball(&s, &ball).unwrap().norm;
        let sampled = norm_oracle(&s, &ball, 100_000, 11).unwrap();
        assert!(sampled <= exact + 1e-9, "trial {trial}");
        assert!(
            sampled >= exact * (1.0 - 5e-3),
            "trial {trial}: sampled {sampled} too far below exact {exact}"
        );
    }
}

#[test]
fn norm_is_invariant_under_rotation_and_translation() {
    let ball = Ball::unit(3);
    let shift = [2.0, -1.0, 0.5];
    for trial in 0..10 {
        let s = random_simplex_in_ball(&ball, 13, trial);
        let exact = norm_ball(&s, &ball).unwrap().norm;

        let moved_vertices: Vec<Point> = s
            .vertices()
            .iter()
            .map(|v| {
                let r = rotate(v.coords(), 0.37);
                Point::new(r.iter().zip(&shift).map(|(a, b)| a + b).collect()).unwrap()
            })
            .collect();
        let moved = Simplex::new(moved_vertices).unwrap();
        let moved_center = Point::new(
            rotate(&[0.0; 3], 0.37)
                .iter()
                .zip(&shift)
                .map(|(a, b)| a + b)
                .collect(),
        )
        .unwrap();
        let moved_ball = Ball::new(moved_center, 1.0).unwrap();
        let moved_norm = norm_ball(&moved, &moved_ball).unwrap().norm;
        assert!(
            (exact - moved_norm).abs() <= 1e-9,
            "trial {trial}: {exact} vs {moved_norm}"
        );
    }
}

#[test]
fn norm_is_invariant_under_uniform_scaling() {
    let ball = Ball::unit(3);
    for trial in 0..10 {
        let s = random_simplex_in_ball(&ball, 17, trial);
        let exact = norm_ball(&s, &ball).unwrap().norm;
        for scale in [0.25, 4.0] {
            let scaled_vertices: Vec<Point> = s.vertices().iter().map(|v| v.scale(scale)).collect();
            let scaled = Simplex::new(scaled_vertices).unwrap();
            let scaled_ball = Ball::new(Point::origin(3), scale).unwrap();
            let scaled_norm = norm_ball(&scaled, &scaled_ball).unwrap().norm;
            assert!((exact - scaled_norm).abs() <= 1e-9, "trial {trial}");
        }
    }
}

#[test]
fn certificate_attains_the_reported_norm() {
    for n in [2usize, 3, 5] {
        let ball = Ball::new(Point::new(vec![0.5; n]).unwrap(), 2.0).unwrap();
        for trial in 0..10 {
            let s = random_simplex_in_ball(&ball, 19, trial);
            let report = norm_ball(&s, &ball).unwrap();
            assert_eq!(report.argmax_signs.len(), n + 1);
            assert!(report.argmax_signs.iter().all(|&f| f == 1 || f == -1));
            let d = ball.center().dist(&report.argmax_point);
            assert!((d - ball.radius()).abs() <= 1e-9);
            let lambda = ballproj::projector::lambda_eval(&s, &report.argmax_point).unwrap();
            let sum: f64 = lambda.iter().map(|l| l.abs()).sum();
            assert!(
                (sum - report.norm).abs() <= 1e-9 * report.norm,
                "n={n} trial={trial}: {sum} vs {}",
                report.norm
            );
        }
    }
}

#[test]
fn norm_never_falls_below_theta_for_inscribed_nodes() {
    for n in 2..=6usize {
        let bound = theta(n).theta - 1e-9;
        let ball = Ball::unit(n);
        for trial in 0..50 {
            let s = random_simplex_in_ball(&ball, 23 + n as u64, trial);
            let norm = norm_ball(&s, &ball).unwrap().norm;
            assert!(norm >= bound, "n={n} trial={trial}: {norm} < {bound}");
        }
    }
}

#[test]
fn regular_simplex_attains_theta_on_shifted_balls() {
    for n in 1..=8usize {
        let mut center = vec![-1.0; n];
        center[0] = 3.0;
        let ball = Ball::new(Point::new(center).unwrap(), 2.5).unwrap();
        let s = regular_simplex(n, &ball);
        let norm = norm_ball(&s, &ball).unwrap().norm;
        let expected = theta(n).theta;
        assert!(
            (norm - expected).abs() <= 1e-9,
            "n={n}: {norm} vs {expected}"
        );
    }
}
