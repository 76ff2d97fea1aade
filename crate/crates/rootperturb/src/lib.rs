//! Certified perturbation analysis of complex polynomial roots.
//!
//! Given an unperturbed polynomial `q` and a perturbed polynomial `p` in the
//! same ambient coefficient space, this crate computes explicit quantitative
//! bounds locating every root of `p` (either near a root of `q` or near
//! infinity), partitions the roots of `p` into clusters around the distinct
//! roots of `q` plus an infinity group, and classifies boundary zeros of
//! multivariate polynomials that are zero-free on open polydomains.
//!
//! Module map:
//! - [`poly`]: dense univariate complex polynomials with explicit ambient
//!   capacity and the elementary operations (evaluation, derivative,
//!   reciprocal, Taylor shift).
//! - [`rootfind`]: the numerical root oracle (Aberth-Ehrlich plus Newton
//!   polishing) and single-linkage clustering into distinct roots with
//!   multiplicities.
//! - [`bounds`]: the quantitative results; constants `C` and `D`, the
//!   minimum-distance estimate, the admissibility threshold, and the
//!   two-regime root location report.
//! - [`grouping`]: separation radii, the cluster/infinity partition, and an
//!   empirical search for the largest admissible perturbation size.
//! - [`multivar`]: sparse multivariate polynomials, polydomain geometry,
//!   stability probing, and the boundary-zero trichotomy classifier.
//! - [`json`]: the wire formats used by the CLI and the C API.

pub mod bounds;
pub mod error;
pub mod grouping;
pub mod json;
pub mod multivar;
pub mod poly;
pub mod rootfind;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use num_complex::Complex64;
pub use poly::Poly;
pub use rootfind::{DistinctRoots, RootSet, SolverConfig};
