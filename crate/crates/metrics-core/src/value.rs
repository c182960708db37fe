use crate::confusion::RateTriple;
use crate::error::MetricError;
use crate::spec::MetricSpec;

impl MetricSpec {
    /// Metric value at the given `(tpr, tnr, prev)` point.
    ///
    /// Boundary rates (`tpr`, `tnr` at 0 or 1) are allowed; only genuinely
    /// degenerate denominators (for instance the MCC of a classifier that
    /// predicts a single class) produce an error.
    pub fn value(&self, r: RateTriple) -> Result<f64, MetricError> {
        self.validate()?;
        // revalidate: RateTriple fields are public
        let r = RateTriple::new(r.tpr, r.tnr, r.prev)?;
        let RateTriple { tpr, tnr, prev } = r;
        let gamma = r.predicted_positive();

        let v = match *self {
            Self::Accuracy => prev * tpr + (1.0 - prev) * tnr,
            Self::WeightedAccuracy { w } => w * prev * tpr + (1.0 - w) * (1.0 - prev) * tnr,
            Self::BalancedAccuracy => 0.5 * (tpr + tnr),
            Self::Jaccard => {
                let den = 1.0 - tnr * (1.0 - prev);
                guard_den(den, "jaccard denominator")?;
                prev * tpr / den
            }
            Self::FBeta { beta } => {
                let b2 = beta * beta;
                let den = b2 * prev + gamma;
                guard_den(den, "f-beta denominator")?;
                (1.0 + b2) * prev * tpr / den
            }
            Self::Mcc => {
                let den = gamma * (1.0 - gamma);
                guard_den(den, "mcc denominator (single-class prediction)")?;
                (prev * (1.0 - prev)).sqrt() * (tpr + tnr - 1.0) / den.sqrt()
            }
            Self::Kappa => {
                let s = tpr + tnr - 1.0;
                let chance = 2.0 * prev * (1.0 - prev) * s;
                let den = chance - prev * tpr - (1.0 - prev) * tnr + 1.0;
                guard_den(den, "kappa denominator")?;
                chance / den
            }
            Self::YuleQ => {
                let concord = tpr * tnr;
                let discord = (1.0 - tpr) * (1.0 - tnr);
                guard_den(concord + discord, "yule q denominator")?;
                (concord - discord) / (concord + discord)
            }
            Self::YuleY => {
                let concord = (tpr * tnr).sqrt();
                let discord = ((1.0 - tpr) * (1.0 - tnr)).sqrt();
                guard_den(concord + discord, "yule y denominator")?;
                (concord - discord) / (concord + discord)
            }
            Self::RobustF { c, d0, d1, beta } => {
                let scale = (d0 / prev + beta * beta + 1.0) / (1.0 + c);
                let den = d0 + d1 * prev + prev * tpr + (1.0 - tnr) * (1.0 - prev);
                guard_den(den, "robust f denominator")?;
                scale * (c * prev + prev * tpr) / den
            }
            Self::RobustMcc { d } => {
                let den = d + gamma * (1.0 - gamma);
                guard_den(den, "robust mcc denominator")?;
                (d + prev * (1.0 - prev)).sqrt() * (tpr + tnr - 1.0) / den.sqrt()
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(MetricError::DegenerateInput(format!("{self} produced {v}")))
        }
    }
}

fn guard_den(den: f64, what: &str) -> Result<(), MetricError> {
    if den <= 0.0 || den.is_nan() {
        Err(MetricError::DegenerateInput(format!("{what} = {den}")))
    } else {
        Ok(())
    }
}
