//! Fixed-point analysis for piecewise constant/affine self-maps of the real
//! line.
//!
//! The crate computes contraction numbers (`M1`, `M2`, their powers, Pant,
//! Bisht–Pant and Rhoades maxima), verifies two-part contractive conditions
//! by seeded sampling, runs Picard iteration, and classifies continuity at
//! fixed points from the directional limits of `x ↦ M(x, y0)`. Mexican-hat
//! activation functions and fixed circles are supported as applications.

// Negated float comparisons are used on purpose to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod activations;
pub mod cli;
pub mod contraction;
pub mod discontinuity;
pub mod error;
pub mod fixed_circle;
pub mod format;
pub mod metric;
pub mod numerics;
pub mod picard;
pub mod report;
pub mod sampling;
pub mod verifier;

pub use activations::{build as build_activation, fixed_points, FixedSet, MexicanHatParams, Tails};
pub use contraction::{compute, profile, ContractionKind, ContractionNumber, KindName};
pub use discontinuity::{analytic_continuity, classify_at, AnalyticContinuity, ContinuityStatus, ContinuityVerdict};
pub use error::{Error, Result};
pub use metric::{usual_metric, Metric, UsualMetric};
pub use numerics::{Interval, Piece, PieceKind, PiecewiseFunc, SelfMap, Side};
pub use picard::{basin_sweep, iterate, IterateOptions, OrbitReport};
pub use sampling::Sampling;
