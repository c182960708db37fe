use thiserror::Error;

/// Errors produced by metric construction and evaluation.
///
/// Evaluation never returns NaN or infinities: any degenerate denominator or
/// out-of-domain input is reported as a typed error so that callers (grid
/// optimizers, fixed-point solvers) can treat the point as infeasible.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("empty confusion matrix")]
    EmptyConfusionMatrix,

    #[error("confusion rates invalid: {0}")]
    InvalidRates(String),

    #[error("undefined conditional rate: {0}")]
    UndefinedConditionalRate(String),

    #[error("rate triple out of domain: {0}")]
    InvalidTriple(String),

    #[error("invalid metric parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate metric input: {0}")]
    DegenerateInput(String),

    #[error("derivative undefined at boundary: {0}")]
    DerivativeAtBoundary(String),

    #[error("unknown metric name: {0:?}")]
    UnknownMetric(String),

    #[error("malformed metric spec {spec:?}: {reason}")]
    MalformedSpec { spec: String, reason: String },
}
