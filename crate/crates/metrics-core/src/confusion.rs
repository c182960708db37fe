use crate::error::MetricError;
use crate::INTERIOR_TOL;

/// Integer 2x2 confusion table of a classifier on a finite sample.
///
/// Rows are the true label (1 then 0), columns the predicted label, so
/// `n11` counts true positives and `n00` true negatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub n11: u64,
    pub n10: u64,
    pub n01: u64,
    pub n00: u64,
}

impl ConfusionCounts {
    pub fn new(n11: u64, n10: u64, n01: u64, n00: u64) -> Self {
        Self { n11, n10, n01, n00 }
    }

    pub fn total(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }

    /// Number of samples with true label 1.
    pub fn positives(&self) -> u64 {
        self.n11 + self.n10
    }

    /// Number of samples with true label 0.
    pub fn negatives(&self) -> u64 {
        self.n01 + self.n00
    }

    /// Convert counts into joint probabilities by dividing by the total.
    pub fn to_rates(&self) -> Result<ConfusionRates, MetricError> {
        let total = self.total();
        if total == 0 {
            return Err(MetricError::EmptyConfusionMatrix);
        }
        let t = total as f64;
        ConfusionRates::new(
            self.n11 as f64 / t,
            self.n10 as f64 / t,
            self.n01 as f64 / t,
            self.n00 as f64 / t,
        )
    }

    /// Shorthand for `to_rates` followed by `to_triple`.
    pub fn to_triple(&self) -> Result<RateTriple, MetricError> {
        self.to_rates()?.to_triple()
    }
}

/// Joint probabilities of true label and prediction; entries sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionRates {
    pub p11: f64,
    pub p10: f64,
    pub p01: f64,
    pub p00: f64,
}

impl ConfusionRates {
    pub fn new(p11: f64, p10: f64, p01: f64, p00: f64) -> Result<Self, MetricError> {
        for (name, p) in [("p11", p11), ("p10", p10), ("p01", p01), ("p00", p00)] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(MetricError::InvalidRates(format!("{name}={p} not in [0,1]")));
            }
        }
        let sum = p11 + p10 + p01 + p00;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(MetricError::InvalidRates(format!("entries sum to {sum}, expected 1")));
        }
        Ok(Self { p11, p10, p01, p00 })
    }

    /// Prevalence of the positive class.
    pub fn prevalence(&self) -> f64 {
        self.p11 + self.p10
    }

    /// Condition on the true label: `(tpr, tnr, prevalence)`.
    ///
    /// Fails when one of the true classes has zero mass, since the
    /// corresponding conditional rate is undefined.
    pub fn to_triple(&self) -> Result<RateTriple, MetricError> {
        let pos = self.p11 + self.p10;
        let neg = self.p01 + self.p00;
        if pos <= 0.0 {
            return Err(MetricError::UndefinedConditionalRate(
                "no positives present (p11 + p10 = 0)".into(),
            ));
        }
        if neg <= 0.0 {
            return Err(MetricError::UndefinedConditionalRate(
                "no negatives present (p01 + p00 = 0)".into(),
            ));
        }
        RateTriple::new(self.p11 / pos, self.p00 / neg, pos)
    }
}

/// Classifier behaviour in class-conditional coordinates.
///
/// `tpr` and `tnr` depend only on the class-conditional distributions, while
/// `prev` is the (possibly exogenous) weight of the positive class. Metrics
/// parametrised this way make the effect of class imbalance explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTriple {
    pub tpr: f64,
    pub tnr: f64,
    pub prev: f64,
}

impl RateTriple {
    /// Validates `tpr, tnr` in `[0, 1]` and `prev` strictly inside `(0, 1)`.
    pub fn new(tpr: f64, tnr: f64, prev: f64) -> Result<Self, MetricError> {
        for (name, r) in [("tpr", tpr), ("tnr", tnr)] {
            if !(0.0..=1.0).contains(&r) || r.is_nan() {
                return Err(MetricError::InvalidTriple(format!("{name}={r} not in [0,1]")));
            }
        }
        if !(prev > 0.0 && prev < 1.0) {
            return Err(MetricError::InvalidTriple(format!("prev={prev} not in (0,1)")));
        }
        Ok(Self { tpr, tnr, prev })
    }

    /// Fraction of the population predicted positive.
    pub fn predicted_positive(&self) -> f64 {
        self.prev * self.tpr + (1.0 - self.prev) * (1.0 - self.tnr)
    }

    /// True when all three coordinates are strictly interior, which is what
    /// derivative evaluation requires.
    pub fn is_interior(&self) -> bool {
        let in_open = |x: f64| x > INTERIOR_TOL && x < 1.0 - INTERIOR_TOL;
        in_open(self.tpr) && in_open(self.tnr) && in_open(self.prev)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_to_rates_divides_by_total() {
        // classifier phi_1 from the worked two-Gaussian example
        let c = ConfusionCounts::new(2640, 360, 1352, 5648);
        let r = c.to_rates().unwrap();
        assert_eq!(r.p11, 0.2640);
        assert_eq!(r.p10, 0.0360);
        assert_eq!(r.p01, 0.1352);
        assert_eq!(r.p00, 0.5648);
    }

    #[test]
    fn perfect_balanced_classifier() {
        let r = ConfusionCounts::new(1, 0, 0, 1).to_rates().unwrap();
        assert_eq!(r, ConfusionRates::new(0.5, 0.0, 0.0, 0.5).unwrap());
    }

    #[test]
    fn empty_counts_rejected() {
        assert_eq!(
            ConfusionCounts::new(0, 0, 0, 0).to_rates(),
            Err(MetricError::EmptyConfusionMatrix)
        );
    }

    #[test]
    fn rates_to_triple_matches_hand_computation() {
        let r = ConfusionRates::new(0.2640, 0.0360, 0.1352, 0.5648).unwrap();
        let t = r.to_triple().unwrap();
        assert!((t.tpr - 0.88).abs() < 1e-12);
        assert!((t.tnr - 0.5648 / 0.7).abs() < 1e-12);
        assert!((t.prev - 0.30).abs() < 1e-12);
    }

    #[test]
    fn uniform_table_gives_half_rates() {
        let t = ConfusionRates::new(0.25, 0.25, 0.25, 0.25)
            .unwrap()
            .to_triple()
            .unwrap();
        assert_eq!((t.tpr, t.tnr, t.prev), (0.5, 0.5, 0.5));
    }

    #[test]
    fn one_class_only_has_no_conditional_rate() {
        let r = ConfusionRates::new(0.5, 0.5, 0.0, 0.0).unwrap();
        assert!(matches!(
            r.to_triple(),
            Err(MetricError::UndefinedConditionalRate(_))
        ));
    }

    #[test]
    fn rates_must_sum_to_one() {
        assert!(ConfusionRates::new(0.5, 0.5, 0.1, 0.0).is_err());
    }

    #[test]
    fn interior_check_respects_tolerance() {
        let t = RateTriple::new(1.0, 0.5, 0.3).unwrap();
        assert!(!t.is_interior());
        let t = RateTriple::new(0.9999, 0.5, 0.3).unwrap();
        assert!(t.is_interior());
    }
}
