use crate::confusion::RateTriple;
use crate::error::MetricError;
use crate::spec::MetricSpec;

impl MetricSpec {
    /// Ratio of partial derivatives `dM/d(tnr) / dM/d(tpr)` at an interior
    /// rate triple.
    ///
    /// This quantity is the right-hand side of the fixed-point equation for
    /// the optimal density-ratio threshold, and it is invariant under the
    /// prevalence-only normalizing prefactors of the robust metrics. The
    /// closed forms are hard-coded; the test suite pins each one against
    /// central finite differences of `value`.
    pub fn derivative_ratio(&self, r: RateTriple) -> Result<f64, MetricError> {
        self.validate()?;
        let r = RateTriple::new(r.tpr, r.tnr, r.prev)?;
        if !r.is_interior() {
            return Err(MetricError::DerivativeAtBoundary(format!(
                "(tpr={}, tnr={}, prev={})",
                r.tpr, r.tnr, r.prev
            )));
        }
        let RateTriple { tpr, tnr, prev } = r;

        let (num, den) = match *self {
            Self::Accuracy => (1.0 - prev, prev),
            Self::WeightedAccuracy { w } => ((1.0 - w) * (1.0 - prev), w * prev),
            // linear with equal weights on tpr and tnr
            Self::BalancedAccuracy => (1.0, 1.0),
            Self::Jaccard => (tpr * (1.0 - prev), 1.0 - tnr * (1.0 - prev)),
            Self::FBeta { beta } => (
                tpr * (1.0 - prev),
                beta * beta * prev + (1.0 - tnr) * (1.0 - prev),
            ),
            Self::Mcc => mcc_ratio_parts(tpr, tnr, prev, 0.0),
            Self::RobustMcc { d } => mcc_ratio_parts(tpr, tnr, prev, d),
            Self::Kappa => (
                tpr + prev * (1.0 - 2.0 * tpr),
                1.0 - tnr - prev * (1.0 - 2.0 * tnr),
            ),
            Self::YuleQ | Self::YuleY => (tpr * (1.0 - tpr), tnr * (1.0 - tnr)),
            Self::RobustF { c, d0, d1, .. } => (
                (c + tpr) * (1.0 - prev),
                d0 + (d1 - c) * prev + (1.0 - tnr) * (1.0 - prev),
            ),
        };

        if den == 0.0 || !num.is_finite() || !den.is_finite() {
            return Err(MetricError::DegenerateInput(format!(
                "derivative ratio of {self} has numerator {num}, denominator {den}"
            )));
        }
        Ok(num / den)
    }
}

/// Shared core of the MCC and robust-MCC derivative ratios.
///
/// Writing `s = tpr + tnr - 1` and `g = gamma(1 - gamma)`, the ratio is
/// `(2g + s(1-2gamma)(1-prev) + 2d) / (2g - s(1-2gamma)prev + 2d)`; `d = 0`
/// recovers the plain MCC.
fn mcc_ratio_parts(tpr: f64, tnr: f64, prev: f64, d: f64) -> (f64, f64) {
    let s = tpr + tnr - 1.0;
    let gamma = prev * tpr + (1.0 - prev) * (1.0 - tnr);
    let g = gamma * (1.0 - gamma);
    let skew = s * (1.0 - 2.0 * gamma);
    (
        2.0 * g + skew * (1.0 - prev) + 2.0 * d,
        2.0 * g - skew * prev + 2.0 * d,
    )
}
