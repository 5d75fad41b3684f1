//! Learning a stable allocation of a stochastic cooperative game from
//! bandit feedback.
//!
//! The principal observes one noisy reward per queried coalition. For
//! strictly convex games the expected core is full dimensional and its
//! vertices are the marginal vectors; [`learner::common_points_picking`]
//! estimates `n` of them, shrinks confidence boxes around the estimates and
//! stops once a separating-hyperplane test certifies that the average of the
//! estimates lies inside every simplex spanned by one point per box.
//!
//! - [`game`]: reward tables, coalitions, permutations, marginal vectors and
//!   the game generators used by the experiments.
//! - [`oracle`]: the stochastic environment answering coalition queries.
//! - [`geometry`]: simplex width, hyperplane fitting, clearances, membership.
//! - [`learner`]: the sampling loop and its stopping rule.
//! - [`verifier`]: exhaustive ground-truth checks (core membership, vertices,
//!   Shapley value).
//! - [`experiments`]: seeded drivers behind the `core-picker` CLI.

pub mod error;
pub mod experiments;
pub mod game;
pub mod geometry;
pub mod learner;
pub mod oracle;
pub mod verifier;

pub use error::{Error, Result};
pub use game::{Coalition, GameSpec, MarginalVector, Permutation};
pub use geometry::{ConfidenceBox, CoordinateMatrix, Hyperplane};
pub use learner::{Allocation, LearnerConfig, PermChoice, RunReport};
pub use oracle::{BanditOracle, NoiseModel};
