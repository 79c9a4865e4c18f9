//! Stochastic local search minimizing the projector norm over node placements
//! in the closed unit ball.
//!
//! The minimum is known in closed form (θₙ, attained by regular inscribed
//! simplices), so the optimizer is an empirical cross-check: from random
//! starts it should land near norm θₙ with nearly regular, nearly inscribed
//! nodes. No global-optimality certification is attempted.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Simplex};
use crate::projector::norm_ball;
use crate::regular::theta;
use crate::sampling::{random_simplex_rng, stream_rng, unit_sphere_point};

/// A start stops refining once its step shrinks below this.
const STEP_FLOOR: f64 = 1e-7;

/// 2ⁿ sign enumeration runs inside the inner loop; past this it is too slow.
pub const MAX_OPTIMIZE_DIM: usize = 12;

#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    pub n: usize,
    pub starts: usize,
    pub iters: usize,
    pub initial_step: f64,
    pub shrink: f64,
    pub seed: u64,
}

impl OptimizeConfig {
    /// Defaults that reach 1e-3 gaps at n ≤ 3 in seconds.
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            starts: 16,
            iters: 20_000,
            initial_step: 0.3,
            shrink: 0.7,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.n > MAX_OPTIMIZE_DIM {
            return Err(Error::OutOfDomain {
                name: "n",
                value: self.n as f64,
                min: 1.0,
                max: MAX_OPTIMIZE_DIM as f64,
            });
        }
        if self.starts < 1 {
            return Err(Error::Config("starts must be at least 1".into()));
        }
        if self.iters < 1 {
            return Err(Error::Config("iters must be at least 1".into()));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return Err(Error::Config("step must be positive".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Config("shrink must be in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub best_simplex: Simplex,
    pub best_norm: f64,
    /// best_norm − θₙ; nonnegative up to roundoff by minimality.
    pub theta_gap: f64,
    /// maxⱼ |‖x⁽ʲ⁾ − center‖ − R|.
    pub inscribed_deviation: f64,
    /// (max − min) / mean over pairwise vertex distances.
    pub distance_spread: f64,
    /// Final best norm of each start, in start order.
    pub trace: Vec<f64>,
}

/// How far a simplex is from being regular and inscribed in the ball.
pub fn regularity_metrics(simplex: &Simplex, ball: &Ball) -> (f64, f64) {
    let n = simplex.dim();
    let mut deviation = 0.0f64;
    for v in simplex.vertices() {
        deviation = deviation.max((ball.center().dist(v) - ball.radius()).abs());
    }
    let mut min_d = f64::INFINITY;
    let mut max_d = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..=n {
        for j in i + 1..=n {
            let d = simplex.vertex(i).dist(simplex.vertex(j));
            min_d = min_d.min(d);
            max_d = max_d.max(d);
            sum += d;
            count += 1;
        }
    }
    (deviation, (max_d - min_d) / (sum / count as f64))
}

/// One start of the search. Returns the best simplex, its norm, and the
/// best-so-far value recorded after every iteration.
pub(crate) fn run_start(config: &OptimizeConfig, start: usize) -> (Simplex, f64, Vec<f64>) {
    let n = config.n;
    let ball = Ball::unit(n);
    let mut rng = stream_rng(config.seed, start as u64);

    let mut current = random_simplex_rng(&ball, &mut rng);
    let mut current_norm = norm_ball(&current, &ball)
        .expect("random simplices are nondegenerate by construction")
        .norm;

    let mut history = Vec::with_capacity(config.iters);
    let mut step = config.initial_step;
    let mut accepted_in_sweep = false;

    for iter in 0..config.iters {
        let vertex = iter % (n + 1);
        let direction = unit_sphere_point(n, &mut rng);

        let mut moved = current.vertex(vertex).add_scaled(step, &direction);
        let norm = moved.norm();
        if norm > 1.0 {
            moved = moved.scale(1.0 / norm);
        }

        let mut vertices = current.vertices().to_vec();
        vertices[vertex] = moved;
        if let Ok(candidate) = Simplex::new(vertices) {
            let candidate_norm = norm_ball(&candidate, &ball)
                .expect("nondegenerate by construction")
                .norm;
            if candidate_norm < current_norm {
                current = candidate;
                current_norm = candidate_norm;
                accepted_in_sweep = true;
            }
        }
        history.push(current_norm);

        if vertex == n {
            if accepted_in_sweep {
                // regrow after progress so one unlucky sweep cannot starve
                // the search; the floor still terminates stalled starts
                step = (step / config.shrink).min(config.initial_step);
            } else {
                step *= config.shrink;
                if step < STEP_FLOOR {
                    break;
                }
            }
            accepted_in_sweep = false;
        }
    }

    (current, current_norm, history)
}

/// Minimizes the projector norm over the unit ball from multiple random
/// starts. Deterministic for a fixed config: each start draws from its own
/// RNG stream and the merge prefers lower norm, then lower start index.
pub fn minimize_norm(config: &OptimizeConfig) -> Result<OptimizeResult> {
    config.validate()?;
    let ball = Ball::unit(config.n);

    let mut runs: Vec<(usize, Simplex, f64)> = (0..config.starts)
        .into_par_iter()
        .map(|start| {
            let (simplex, norm, _) = run_start(config, start);
            (start, simplex, norm)
        })
        .collect();
    runs.sort_by_key(|(start, _, _)| *start);

    let trace: Vec<f64> = runs.iter().map(|(_, _, norm)| *norm).collect();
    let (_, best_simplex, best_norm) = runs
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
        .expect("starts >= 1");

    let (inscribed_deviation, distance_spread) = regularity_metrics(&best_simplex, &ball);
    Ok(OptimizeResult {
        theta_gap: best_norm - theta(config.n).theta,
        best_simplex,
        best_norm,
        inscribed_deviation,
        distance_spread,
        trace,
    })
}
