//! Closed-form minimal norm over a ball and regular inscribed simplices.
//!
//! The minimal projector norm on an n-ball is ψ(kₙ) where
//! ψ(t) = (2√n)/(n+1)·√(t(n+1−t)) + |1 − 2t/(n+1)| and kₙ is whichever of
//! aₙ = ⌊(n+1)/2 − √(n+1)/2⌋ and aₙ+1 maximizes ψ. The minimizing node set is
//! a regular simplex inscribed in the boundary sphere.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Point, Simplex};

/// ψ(aₙ) = ψ(aₙ+1) never happens for n > 1 in practice; below this gap the
/// maximizer is reported as aₙ+1 (which is what the n = 1 double root needs).
const TIE_EPS: f64 = 1e-12;

/// One row of the θₙ table.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaRecord {
    pub n: usize,
    pub a_n: usize,
    pub psi_at_a: f64,
    pub psi_at_a_plus_1: f64,
    /// The maximizer among {aₙ, aₙ+1}.
    pub k_n: usize,
    /// θₙ = max(ψ(aₙ), ψ(aₙ+1)).
    pub theta: f64,
}

/// ψ(t) for the given dimension, defined on 0 ≤ t ≤ n+1.
pub fn psi(n: usize, t: f64) -> Result<f64> {
    let np1 = (n + 1) as f64;
    if !(0.0..=np1).contains(&t) {
        return Err(Error::OutOfDomain {
            name: "t",
            value: t,
            min: 0.0,
            max: np1,
        });
    }
    let root = (t * (np1 - t)).sqrt();
    Ok(2.0 * (n as f64).sqrt() / np1 * root + (1.0 - 2.0 * t / np1).abs())
}

/// aₙ = ⌊(n+1)/2 − √(n+1)/2⌋.
pub fn a_n(n: usize) -> usize {
    let np1 = (n + 1) as f64;
    ((np1 - np1.sqrt()) / 2.0).floor() as usize
}

/// θₙ for the unit ball, with the evaluations backing it.
pub fn theta(n: usize) -> ThetaRecord {
    let a = a_n(n);
    let psi_at_a = psi(n, a as f64).expect("a_n is inside [0, n+1]");
    let psi_at_a_plus_1 = psi(n, (a + 1) as f64).expect("a_n + 1 is inside [0, n+1]");
    let k_n = if psi_at_a > psi_at_a_plus_1 + TIE_EPS {
        a
    } else {
        a + 1
    };
    ThetaRecord {
        n,
        a_n: a,
        psi_at_a,
        psi_at_a_plus_1,
        k_n,
        theta: psi_at_a.max(psi_at_a_plus_1),
    }
}

/// Regular simplex with n+1 vertices on the boundary sphere of the ball,
/// in a fixed orientation. No randomness is involved.
///
/// The vertices are the n+1 coordinate directions of ℝⁿ⁺¹ projected onto the
/// zero-sum hyperplane and expressed in the orthonormal basis
/// bₖ ∝ e₁ + … + eₖ − k·eₖ₊₁, then scaled to the requested radius.
pub fn regular_simplex(n: usize, ball: &Ball) -> Simplex {
    assert_eq!(ball.dim(), n, "ball dimension must match n");
    let scale = ball.radius() * ((n + 1) as f64 / n as f64).sqrt();
    let center = ball.center().coords();

    let mut vertices = Vec::with_capacity(n + 1);
    for j in 0..=n {
        // coordinate k of vertex j is the j-th entry of bₖ₊₁
        let coords: Vec<f64> = (1..=n)
            .map(|k| {
                let denom = (k as f64 * (k + 1) as f64).sqrt();
                let entry = if j < k {
                    1.0
                } else if j == k {
                    -(k as f64)
                } else {
                    0.0
                };
                center[k - 1] + scale * entry / denom
            })
            .collect();
        vertices.push(Point::new(coords).expect("finite coordinates"));
    }

    Simplex::new(vertices).expect("a regular inscribed simplex is nondegenerate")
}
