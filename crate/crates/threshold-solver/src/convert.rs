//! Conversions between density-ratio thresholds and regression thresholds.
//!
//! Thresholding the regression function at `tilde` is the same classifier as
//! thresholding the density ratio at `delta = (1-prev) tilde / (prev (1-tilde))`;
//! the two maps below are exact algebraic inverses of one another.

/// Density-ratio threshold to regression threshold:
/// `tilde = delta prev / (delta prev + 1 - prev)`.
pub fn threshold_density_to_regression(delta: f64, prev: f64) -> f64 {
    debug_assert!(delta > 0.0 && prev > 0.0 && prev < 1.0);
    delta * prev / (prev * delta + (1.0 - prev))
}

/// Regression threshold to density-ratio threshold:
/// `delta = (1-prev) tilde / (prev (1-tilde))`.
pub fn threshold_regression_to_density(tilde: f64, prev: f64) -> f64 {
    debug_assert!(tilde > 0.0 && tilde < 1.0 && prev > 0.0 && prev < 1.0);
    (1.0 - prev) * tilde / (prev * (1.0 - tilde))
}
