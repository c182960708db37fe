//! Bayes-optimal density-ratio thresholds via the fixed-point equation.
//!
//! For a performance metric parametrised as `M(tpr, tnr, prev)` and a family
//! of density-ratio threshold classifiers with operating curve
//! `delta -> (tpr(delta), tnr(delta))`, the optimal threshold satisfies
//! `delta = dM/d(tnr) / dM/d(tpr)` evaluated at the classifier's own rates.
//! The solver brackets sign changes of the residual on a log-spaced grid and
//! refines them by bisection, then picks the root with the largest metric
//! value. Threshold conversions between the density-ratio scale and the
//! regression-function scale live here as well.

mod convert;
mod solve;

pub use convert::{threshold_density_to_regression, threshold_regression_to_density};
pub use solve::{fixed_point_iteration, solve_fixed_point, sweep_delta_star};

use metrics_core::MetricError;
use thiserror::Error;

/// Rate-model evaluation failure, carrying the probed threshold.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("rate model failed at delta={delta}: {reason}")]
pub struct ModelError {
    pub delta: f64,
    pub reason: String,
}

/// Operating characteristics of a threshold-classifier family.
///
/// Implementations map a density-ratio threshold to the pair `(tpr, tnr)`,
/// both in `[0, 1]`. Implementations must be pure and safe to evaluate
/// concurrently; when `is_monotone` returns true the solver may assume `tpr`
/// nonincreasing and `tnr` nondecreasing in the threshold.
pub trait RateModel: Sync {
    fn rates(&self, delta: f64) -> Result<(f64, f64), ModelError>;

    /// Threshold search interval `[lo, hi]`; intersected with the solver's
    /// own domain options.
    fn domain(&self) -> (f64, f64) {
        (1e-6, 1e8)
    }

    fn is_monotone(&self) -> bool {
        true
    }
}

impl<F> RateModel for F
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    fn rates(&self, delta: f64) -> Result<(f64, f64), ModelError> {
        Ok(self(delta))
    }
}

/// Tuning knobs for `solve_fixed_point`, exposed one-to-one as CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Number of log-spaced scan points used to bracket sign changes.
    pub grid_points: usize,
    /// Lower edge of the search domain.
    pub delta_min: f64,
    /// Upper edge of the search domain.
    pub delta_max: f64,
    /// Absolute tolerance on delta, applied below 1.
    pub tol_abs: f64,
    /// Relative tolerance on delta, applied at or above 1.
    pub tol_rel: f64,
    /// Hard cap on bisection steps per bracket.
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    // domain sized to cover the largest table thresholds (~3.6e6)
    fn default() -> Self {
        Self {
            grid_points: 512,
            delta_min: 1e-6,
            delta_max: 1e8,
            tol_abs: 1e-10,
            tol_rel: 1e-8,
            max_iterations: 200,
        }
    }
}

impl SolverOptions {
    /// Width tolerance for a bracket around `delta`.
    fn delta_tol(&self, delta: f64) -> f64 {
        if delta < 1.0 {
            self.tol_abs
        } else {
            self.tol_rel * delta
        }
    }
}

/// Solution of the fixed-point equation for one metric and prevalence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointResult {
    pub delta_star: f64,
    /// `|delta_star - ratio(delta_star)|` at the solution.
    pub residual: f64,
    pub tpr: f64,
    pub tnr: f64,
    pub metric_value_at_opt: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("no fixed point in domain [{lo}, {hi}] ({probes} usable probes)")]
    NoFixedPoint { lo: f64, hi: f64, probes: usize },

    #[error("search domain is empty or invalid: [{lo}, {hi}]")]
    EmptyDomain { lo: f64, hi: f64 },

    #[error("prevalence {0} outside (0,1)")]
    InvalidPrevalence(f64),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Metric(#[from] MetricError),
}
