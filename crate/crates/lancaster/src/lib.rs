//! Lancaster correlation coefficients and the inference machinery around
//! them.
//!
//! The Lancaster correlation of a pair (X, Y) is the larger of two absolute
//! correlations: the correlation of normal-score transformed margins and the
//! correlation of their squares. It equals maximum correlation on the
//! Sarmanov-Lancaster class and |rho| for the bivariate normal, while staying
//! cheap to estimate. This crate provides:
//!
//! - rank-based and moment-based estimators plus the competitor coefficients
//!   (Pearson, Spearman, distance correlation, Chatterjee's xi)
//!   ([`estimators`]),
//! - the asymptotic covariance of the component pair and the limit laws of
//!   the max statistic, including the skew-normal mixture forms
//!   ([`asymptotics`]),
//! - independence tests (asymptotic and permutation), the covariance
//!   bootstrap and six confidence-interval constructions ([`inference`]),
//! - seeded samplers for the benchmark distributions ([`samplers`]) and
//!   Monte Carlo study drivers for estimate / power / coverage tables
//!   ([`experiments`]).
//!
//! All randomized routines take an explicit seed and derive one RNG stream
//! per work unit, so results are reproducible bit-for-bit regardless of
//! thread count.

pub mod asymptotics;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod inference;
pub mod ks;
pub mod normal;
pub mod quad;
pub mod rng;
pub mod sample;
pub mod samplers;

pub use asymptotics::{CovMatrix2, LawKind, LimitLaw, MomentSet};
pub use error::{Error, Result};
pub use estimators::{Coefficient, Component, LancasterEstimate, ScoreSet};
pub use experiments::{StudyCell, StudyConfig, StudyKind, StudyReport};
pub use inference::{
    BootstrapCov, CiMethod, ConfidenceInterval, EstimatorKind, TailMode, TestMethod, TestResult,
};
pub use sample::Sample;
pub use samplers::DistributionSpec;
