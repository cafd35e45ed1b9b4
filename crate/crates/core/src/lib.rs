//! Gromov–Hausdorff distances from finite metric spaces to simplexes.
//!
//! A simplex `λΔ_m` is the `m`-point space with every non-zero distance
//! equal to `λ`. For a finite space `X` the distance `2·d_GH(λΔ_m, X)` has
//! closed forms when `m > #X` or `m = #X`, and otherwise is an infimum over
//! partitions of `X` into `m` blocks:
//!
//! ```text
//! 2·d_GH(λΔ_m, X) = min over D of max{diam D, λ - α(D), diam X - λ}
//! ```
//!
//! where `diam D` is the largest block diameter and `α(D)` the smallest gap
//! between blocks. The [`simplex`] module computes this exactly, derives the
//! partition characteristics `α_m±`, `d_m±`, and turns characteristics alone
//! into exact values or certified intervals. [`correspondence`] holds an
//! independent brute-force oracle over irreducible correspondences.
//!
//! ```
//! use gh_simplex::{gh_to_simplex, FiniteMetricSpace};
//!
//! let x = FiniteMetricSpace::from_rows(vec![
//!     vec![0.0, 1.0, 2.0],
//!     vec![1.0, 0.0, 2.0],
//!     vec![2.0, 2.0, 0.0],
//! ])?;
//! assert_eq!(gh_to_simplex(&x, 2, 1.0)?, 1.0);
//! # Ok::<(), gh_simplex::Error>(())
//! ```

pub mod cli;
pub mod correspondence;
mod error;
pub mod generate;
pub mod io;
pub mod lemmas;
pub mod metric;
pub mod partition;
pub mod simplex;

pub use correspondence::{gh_bruteforce, Correspondence, Relation, DEFAULT_CAP};
pub use error::{Error, Result};
pub use metric::{FiniteMetricSpace, PointSet, Tolerance, Validation};
pub use partition::{partition_count, Partition, Partitions, Separation};
pub use simplex::{
    bounds_from_characteristics, characteristics, classify_case, gh_to_simplex, CaseTag,
    Characteristics, GhBound,
};
