//! Reproducible random geometry.
//!
//! All randomness flows through ChaCha streams: `stream_rng(seed, k)` yields
//! the k-th independent stream of a seed, so trials, sample blocks, and
//! optimizer starts can run in parallel with the same draws regardless of
//! scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::{Ball, Point, Simplex};

/// Independent stream `stream` of the generator keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on the unit sphere of ℝⁿ: a standard Gaussian vector,
/// normalized. Resamples in the (practically impossible) case of a zero draw.
pub fn unit_sphere_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Point {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Point::new(v.into_iter().map(|c| c / norm).collect()).unwrap();
        }
    }
}

/// Uniform point on the boundary sphere of a ball.
pub fn boundary_point<R: Rng + ?Sized>(ball: &Ball, rng: &mut R) -> Point {
    let dir = unit_sphere_point(ball.dim(), rng);
    ball.center().add_scaled(ball.radius(), &dir)
}

/// Uniform point in the closed ball: direction times radius · U^(1/n).
pub fn interior_point<R: Rng + ?Sized>(ball: &Ball, rng: &mut R) -> Point {
    let n = ball.dim();
    let dir = unit_sphere_point(n, rng);
    let u: f64 = rng.random();
    let r = ball.radius() * u.powf(1.0 / n as f64);
    ball.center().add_scaled(r, &dir)
}

/// n+1 independent uniform draws in the ball, redrawn as a whole until the
/// simplex clears the degeneracy threshold. Degenerate draws have measure
/// zero, so the retry loop is a formality.
pub fn random_simplex_rng<R: Rng + ?Sized>(ball: &Ball, rng: &mut R) -> Simplex {
    let n = ball.dim();
    for _ in 0..10_000 {
        let vertices: Vec<Point> = (0..=n).map(|_| interior_point(ball, rng)).collect();
        if let Ok(s) = Simplex::new(vertices) {
            return s;
        }
    }
    unreachable!("random draws in a ball are almost surely nondegenerate")
}

/// Random simplex of trial `trial` under `seed`; trials use disjoint streams.
pub fn random_simplex_in_ball(ball: &Ball, seed: u64, trial: u64) -> Simplex {
    let mut rng = stream_rng(seed, trial);
    random_simplex_rng(ball, &mut rng)
}
