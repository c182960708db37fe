//! Binary-classification performance metrics and their threshold calculus.
//!
//! Metrics are expressed in two equivalent coordinate systems: the joint
//! confusion probabilities of a classifier, and the `(tpr, tnr, prevalence)`
//! triple that separates the class-conditional behaviour of the classifier
//! from the class weight. The triple form is what the fixed-point threshold
//! solver consumes: every metric exposes both its value and the ratio of its
//! partial derivatives with respect to specificity and sensitivity.
//!
//! Besides the classical catalogue (accuracy variants, Jaccard, F-beta, MCC,
//! Cohen's kappa, Yule's Q and Y) the crate implements robust variants of the
//! F-score and of the MCC whose optimal density-ratio threshold stays bounded
//! as the positive class becomes rare, together with the proven bound.

mod confusion;
mod error;
mod ratio;
mod spec;
mod value;

pub use confusion::{ConfusionCounts, ConfusionRates, RateTriple};
pub use error::MetricError;
pub use spec::MetricSpec;

/// Open-interval tolerance for "strictly interior" rate checks.
///
/// Rates within `INTERIOR_TOL` of 0 or 1 are treated as boundary values:
/// allowed when evaluating a metric, rejected when evaluating its derivative
/// ratio.
pub const INTERIOR_TOL: f64 = 1e-12;
