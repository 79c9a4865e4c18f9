//! Exact operator norms of linear interpolation projectors on Euclidean balls.
//!
//! An (n+1)-point affine interpolation projector maps a continuous function on
//! a ball B ⊂ ℝⁿ to the affine function agreeing with it at the vertices of a
//! nondegenerate simplex. This crate computes the operator norm of that
//! projector exactly ([`projector::norm_ball`]), cross-checks it by sampling
//! ([`projector::norm_oracle`]), evaluates the closed form of the minimal norm
//! over all simplices with vertices in the ball ([`regular::theta`]), builds
//! the minimizing regular configurations ([`regular::regular_simplex`]), and
//! verifies the extremal-point identities behind the minimality proof
//! ([`extremal::verify_theorem1`]). A local search ([`optimizer::minimize_norm`])
//! recovers near-regular minimizers from random starts.

pub mod error;
pub mod extremal;
pub mod geometry;
pub mod matrix;
pub mod optimizer;
pub mod projector;
pub mod regular;
pub mod sampling;

pub use error::{Error, Result};
pub use geometry::{Ball, Ellipsoid, Point, Simplex};
pub use projector::{norm_ball, norm_oracle, ProjectorReport};
pub use regular::{a_n, psi, regular_simplex, theta, ThetaRecord};
