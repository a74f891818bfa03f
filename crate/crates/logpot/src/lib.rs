//! Equilibrium points of logarithmic potentials generated by planar positive
//! charge configurations, together with the machinery that relates them to
//! the charges: weighted multivariate majorization certificates, compound
//! matrix hierarchies, Hausdorff-distance bounds, truncation ladders for
//! infinite charge families, and Monte-Carlo probes of the open inertia-law
//! conjectures.
//!
//! The zeros of the field `f(z) = Σ aᵢ/(z − zᵢ)` are computed spectrally,
//! as eigenvalues of the compression of `diag(z₁,…,zₙ)` to the hyperplane
//! orthogonal to `(√a₁,…,√aₙ)`, with an independent polynomial route kept
//! around as a cross-check.

pub mod conjecture;
pub mod convex;
pub mod dbs;
pub mod error;
pub mod geometry;
pub mod hausdorff;
pub mod infinite;
pub mod linalg;
pub mod majorization;
pub mod matching;
pub mod poly;
pub mod potential;
pub mod rng;

pub use error::{Error, Result};
pub use num_complex::Complex64;
