use std::fmt;
use std::str::FromStr;

use crate::error::MetricError;

/// A performance metric together with its parameters.
///
/// Construct through the checked constructors (or `FromStr`) so that
/// parameter constraints hold; evaluation re-validates, so a hand-built
/// invalid variant fails at use rather than silently producing garbage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricSpec {
    /// Probability of correct classification.
    Accuracy,
    /// `w * p11 + (1 - w) * p00` with `w` in (0,1).
    WeightedAccuracy { w: f64 },
    /// Average of sensitivity and specificity.
    BalancedAccuracy,
    /// Jaccard similarity between predicted-positive and truly-positive sets.
    Jaccard,
    /// F-beta score, `beta > 0`; `beta = 1` is the usual F1.
    FBeta { beta: f64 },
    /// Matthews correlation coefficient.
    Mcc,
    /// Cohen's kappa.
    Kappa,
    /// Yule's coefficient of association.
    YuleQ,
    /// Yule's coefficient of colligation.
    YuleY,
    /// Robust F-score. Requires `d0 > 0`, `c >= 0`, `d1 >= 0` and
    /// `d0 + d1 - c > 0`. `beta` only enters the normalizing prefactor and
    /// defaults to 1.
    RobustF { c: f64, d0: f64, d1: f64, beta: f64 },
    /// Robust MCC with variance regularizer `d > 0`.
    RobustMcc { d: f64 },
}

impl MetricSpec {
    pub fn weighted_accuracy(w: f64) -> Result<Self, MetricError> {
        let spec = Self::WeightedAccuracy { w };
        spec.validate()?;
        Ok(spec)
    }

    pub fn f_beta(beta: f64) -> Result<Self, MetricError> {
        let spec = Self::FBeta { beta };
        spec.validate()?;
        Ok(spec)
    }

    /// Robust F-score with the normalizer's beta slot left at its default 1.
    pub fn robust_f(c: f64, d0: f64, d1: f64) -> Result<Self, MetricError> {
        Self::robust_f_with_beta(c, d0, d1, 1.0)
    }

    pub fn robust_f_with_beta(c: f64, d0: f64, d1: f64, beta: f64) -> Result<Self, MetricError> {
        let spec = Self::RobustF { c, d0, d1, beta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn robust_mcc(d: f64) -> Result<Self, MetricError> {
        let spec = Self::RobustMcc { d };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the parameter constraints of the variant.
    pub fn validate(&self) -> Result<(), MetricError> {
        let finite = |name: &str, x: f64| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(MetricError::InvalidParameter(format!("{name}={x} must be finite")))
            }
        };
        match *self {
            Self::Accuracy | Self::BalancedAccuracy | Self::Jaccard | Self::Mcc
            | Self::Kappa | Self::YuleQ | Self::YuleY => Ok(()),
            Self::WeightedAccuracy { w } => {
                finite("w", w)?;
                if w > 0.0 && w < 1.0 {
                    Ok(())
                } else {
                    Err(MetricError::InvalidParameter(format!("w={w} must lie in (0,1)")))
                }
            }
            Self::FBeta { beta } => {
                finite("beta", beta)?;
                if beta > 0.0 {
                    Ok(())
                } else {
                    Err(MetricError::InvalidParameter(format!("beta={beta} must be positive")))
                }
            }
            Self::RobustF { c, d0, d1, beta } => {
                finite("c", c)?;
                finite("d0", d0)?;
                finite("d1", d1)?;
                finite("beta", beta)?;
                if d0 <= 0.0 {
                    return Err(MetricError::InvalidParameter(format!("d0={d0}: d0 must be positive")));
                }
                if c < 0.0 {
                    return Err(MetricError::InvalidParameter(format!("c={c}: c must be nonnegative")));
                }
                if d1 < 0.0 {
                    return Err(MetricError::InvalidParameter(format!("d1={d1}: d1 must be nonnegative")));
                }
                if d0 + d1 - c <= 0.0 {
                    return Err(MetricError::InvalidParameter(format!(
                        "d0+d1-c must be positive, got {}",
                        d0 + d1 - c
                    )));
                }
                if beta <= 0.0 {
                    return Err(MetricError::InvalidParameter(format!("beta={beta} must be positive")));
                }
                Ok(())
            }
            Self::RobustMcc { d } => {
                finite("d", d)?;
                if d > 0.0 {
                    Ok(())
                } else {
                    Err(MetricError::InvalidParameter(format!("d={d}: d must be positive")))
                }
            }
        }
    }

    /// The proven uniform bound on the optimal density-ratio threshold over
    /// all prevalences in `(0, 1/2]`, where one exists.
    ///
    /// Only the robust families carry such a bound; for every other metric
    /// the threshold can grow without bound (or to a huge finite limit, for
    /// the MCC) as the positive class becomes rare.
    pub fn robustness_bound(&self) -> Option<f64> {
        match *self {
            Self::RobustF { c, d0, d1, .. } => Some((1.0 + c) / d0.min(d0 + d1 - c)),
            Self::RobustMcc { d } => Some((1.0 + 2.0 * d) / (2.0 * d)),
            _ => None,
        }
    }

    /// Short lowercase name of the metric family, as used in parse strings.
    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Accuracy => "acc",
            Self::WeightedAccuracy { .. } => "wacc",
            Self::BalancedAccuracy => "bacc",
            Self::Jaccard => "jac",
            Self::FBeta { .. } => "f",
            Self::Mcc => "mcc",
            Self::Kappa => "kappa",
            Self::YuleQ => "yuleq",
            Self::YuleY => "yuley",
            Self::RobustF { .. } => "frb",
            Self::RobustMcc { .. } => "mccrb",
        }
    }
}

/// Canonical parse string; `format` and `parse` round-trip exactly.
impl fmt::Display for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Accuracy => write!(f, "acc"),
            Self::WeightedAccuracy { w } => write!(f, "wacc:w={w}"),
            Self::BalancedAccuracy => write!(f, "bacc"),
            Self::Jaccard => write!(f, "jac"),
            Self::FBeta { beta } => write!(f, "f{beta}"),
            Self::Mcc => write!(f, "mcc"),
            Self::Kappa => write!(f, "kappa"),
            Self::YuleQ => write!(f, "yuleq"),
            Self::YuleY => write!(f, "yuley"),
            Self::RobustF { c, d0, d1, beta } => {
                write!(f, "frb:c={c}:d0={d0}:d1={d1}")?;
                if beta != 1.0 {
                    write!(f, ":beta={beta}")?;
                }
                Ok(())
            }
            Self::RobustMcc { d } => write!(f, "mccrb:d={d}"),
        }
    }
}

/// Grammar: `name[:key=value]*`. Plain names: `acc`, `bacc`, `jac`, `mcc`,
/// `kappa`, `yuleq`, `yuley`. `f<beta>` inlines the exponent (`f1.5`).
/// Parametrised: `wacc:w=0.3`, `frb:c=0:d0=0.1:d1=1[:beta=1]`, `mccrb:d=0.05`.
impl FromStr for MetricSpec {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, MetricError> {
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or("");
        let mut kv = |expected: &[&str]| -> Result<Vec<(String, f64)>, MetricError> {
            let mut out = Vec::new();
            for part in parts.by_ref() {
                let (k, v) = part.split_once('=').ok_or_else(|| MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: format!("expected key=value, got {part:?}"),
                })?;
                if !expected.contains(&k) {
                    return Err(MetricError::MalformedSpec {
                        spec: s.into(),
                        reason: format!("unknown parameter {k:?}, expected one of {expected:?}"),
                    });
                }
                let v: f64 = v.parse().map_err(|_| MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: format!("parameter {k}={v:?} is not a number"),
                })?;
                if out.iter().any(|(seen, _)| seen == k) {
                    return Err(MetricError::MalformedSpec {
                        spec: s.into(),
                        reason: format!("duplicate parameter {k:?}"),
                    });
                }
                out.push((k.to_string(), v));
            }
            Ok(out)
        };
        let lookup = |pairs: &[(String, f64)], key: &str| -> Option<f64> {
            pairs.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
        };
        let no_params = |pairs: Vec<(String, f64)>, spec: MetricSpec| {
            if pairs.is_empty() {
                Ok(spec)
            } else {
                Err(MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: format!("{} takes no parameters", spec.family_name()),
                })
            }
        };

        match head {
            "acc" => no_params(kv(&[])?, Self::Accuracy),
            "bacc" => no_params(kv(&[])?, Self::BalancedAccuracy),
            "jac" => no_params(kv(&[])?, Self::Jaccard),
            "mcc" => no_params(kv(&[])?, Self::Mcc),
            "kappa" => no_params(kv(&[])?, Self::Kappa),
            "yuleq" => no_params(kv(&[])?, Self::YuleQ),
            "yuley" => no_params(kv(&[])?, Self::YuleY),
            "wacc" => {
                let pairs = kv(&["w"])?;
                let w = lookup(&pairs, "w").ok_or_else(|| MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: "wacc requires w=<value>".into(),
                })?;
                Self::weighted_accuracy(w)
            }
            "frb" => {
                let pairs = kv(&["c", "d0", "d1", "beta"])?;
                let missing = |k: &str| MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: format!("frb requires {k}=<value>"),
                };
                let c = lookup(&pairs, "c").ok_or_else(|| missing("c"))?;
                let d0 = lookup(&pairs, "d0").ok_or_else(|| missing("d0"))?;
                let d1 = lookup(&pairs, "d1").ok_or_else(|| missing("d1"))?;
                let beta = lookup(&pairs, "beta").unwrap_or(1.0);
                Self::robust_f_with_beta(c, d0, d1, beta)
            }
            "mccrb" => {
                let pairs = kv(&["d"])?;
                let d = lookup(&pairs, "d").ok_or_else(|| MetricError::MalformedSpec {
                    spec: s.into(),
                    reason: "mccrb requires d=<value>".into(),
                })?;
                Self::robust_mcc(d)
            }
            _ => {
                if let Some(rest) = head.strip_prefix('f') {
                    if let Ok(beta) = rest.parse::<f64>() {
                        let spec = Self::f_beta(beta)?;
                        return no_params(kv(&[])?, spec);
                    }
                }
                Err(MetricError::UnknownMetric(head.into()))
            }
        }
    }
}
