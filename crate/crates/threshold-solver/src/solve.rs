use metrics_core::{MetricSpec, RateTriple};
use rayon::prelude::*;

use crate::{FixedPointResult, ModelError, RateModel, SolverError, SolverOptions};

/// Rates are clamped into this closed interior before the derivative ratio is
/// evaluated; probes whose raw rates come at least this close to 0 or 1 are
/// treated as boundary-region points when ranking roots.
const RATE_CLAMP: f64 = 1e-12;
const BOUNDARY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct Probe {
    delta: f64,
    /// Residual `delta - ratio(delta)`.
    g: f64,
    tpr: f64,
    tnr: f64,
    /// Raw rates clear of the boundary by `BOUNDARY_MARGIN`.
    interior: bool,
}

struct Objective<'a> {
    spec: &'a MetricSpec,
    model: &'a dyn RateModel,
    prev: f64,
}

impl Objective<'_> {
    /// Evaluate the fixed-point residual at `delta`. The derivative ratio is
    /// taken at rates clamped into the open unit interval, which extends it
    /// continuously to thresholds whose rates are numerically 0 or 1.
    fn probe(&self, delta: f64) -> Result<Option<Probe>, ModelError> {
        let (tpr_raw, tnr_raw) = self.model.rates(delta)?;
        if tpr_raw.is_nan() || tnr_raw.is_nan() {
            return Err(ModelError {
                delta,
                reason: format!("rates are NaN: ({tpr_raw}, {tnr_raw})"),
            });
        }
        let clamp = |x: f64| x.clamp(RATE_CLAMP, 1.0 - RATE_CLAMP);
        let triple = match RateTriple::new(clamp(tpr_raw), clamp(tnr_raw), self.prev) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let ratio = match self.spec.derivative_ratio(triple) {
            Ok(r) => r,
            Err(_) => return Ok(None),
        };
        let margin = tpr_raw
            .min(1.0 - tpr_raw)
            .min(tnr_raw)
            .min(1.0 - tnr_raw);
        Ok(Some(Probe {
            delta,
            g: delta - ratio,
            tpr: tpr_raw,
            tnr: tnr_raw,
            interior: margin > BOUNDARY_MARGIN,
        }))
    }

    fn value(&self, tpr: f64, tnr: f64) -> Option<f64> {
        let clamp = |x: f64| x.clamp(0.0, 1.0);
        let triple = RateTriple::new(clamp(tpr), clamp(tnr), self.prev).ok()?;
        self.spec.value(triple).ok()
    }
}

/// Solve the fixed-point equation `delta = dM/d(tnr) / dM/d(tpr)` over the
/// model's operating curve.
///
/// The residual is scanned over a log-spaced grid to bracket every sign
/// change; each bracket is refined by bisection. When several fixed points
/// exist the one with the largest metric value wins, with roots at
/// numerically boundary rates considered only if no interior root exists
/// (the value of a degenerate metric like Yule's Q is meaningless there).
pub fn solve_fixed_point(
    spec: &MetricSpec,
    model: &dyn RateModel,
    prev: f64,
    opts: &SolverOptions,
) -> Result<FixedPointResult, SolverError> {
    spec.validate()?;
    if !(prev > 0.0 && prev < 1.0) {
        return Err(SolverError::InvalidPrevalence(prev));
    }
    let (model_lo, model_hi) = model.domain();
    let lo = model_lo.max(opts.delta_min);
    let hi = model_hi.min(opts.delta_max);
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(SolverError::EmptyDomain { lo, hi });
    }
    let n = opts.grid_points.max(8);
    let objective = Objective { spec, model, prev };

    // coarse scan: log-spaced probes, keeping failures as gaps
    let log_lo = lo.ln();
    let step = (hi.ln() - log_lo) / (n - 1) as f64;
    let mut probes: Vec<Probe> = Vec::with_capacity(n);
    let mut usable = 0usize;
    let mut prev_probe: Option<Probe> = None;
    let mut brackets: Vec<(Probe, Probe)> = Vec::new();
    for i in 0..n {
        let delta = (log_lo + step * i as f64).exp();
        let Some(p) = objective.probe(delta)? else {
            prev_probe = None;
            continue;
        };
        usable += 1;
        if let Some(q) = prev_probe {
            if (q.g <= 0.0 && p.g > 0.0) || (q.g >= 0.0 && p.g < 0.0) {
                brackets.push((q, p));
            }
        }
        prev_probe = Some(p);
        probes.push(p);
    }

    let mut iterations = 0usize;
    let mut roots: Vec<Probe> = Vec::new();
    for (a, b) in brackets {
        let root = refine_bracket(&objective, a, b, opts, &mut iterations)?;
        roots.push(root);
    }
    // tangency fallback: a probe may sit on a root without a sign change
    if roots.is_empty() {
        if let Some(best) = probes
            .iter()
            .filter(|p| p.g.abs() <= opts.delta_tol(p.delta).max(opts.tol_abs))
            .min_by(|x, y| x.g.abs().total_cmp(&y.g.abs()))
        {
            roots.push(*best);
        }
    }
    if roots.is_empty() {
        return Err(SolverError::NoFixedPoint { lo, hi, probes: usable });
    }

    let pick = |candidates: &[Probe]| -> Option<FixedPointResult> {
        let mut best: Option<FixedPointResult> = None;
        for root in candidates {
            let Some(value) = objective.value(root.tpr, root.tnr) else {
                continue;
            };
            let result = FixedPointResult {
                delta_star: root.delta,
                residual: root.g.abs(),
                tpr: root.tpr,
                tnr: root.tnr,
                metric_value_at_opt: value,
                iterations,
            };
            best = match best {
                Some(b) if b.metric_value_at_opt >= value => Some(b),
                _ => Some(result),
            };
        }
        best
    };

    let interior: Vec<Probe> = roots.iter().copied().filter(|r| r.interior).collect();
    let chosen = if interior.is_empty() {
        pick(&roots)
    } else {
        pick(&interior)
    };
    chosen.ok_or(SolverError::NoFixedPoint { lo, hi, probes: usable })
}

/// Bisection on the residual sign, in log scale, until the bracket width
/// meets the delta tolerance and the residual itself is within tolerance.
fn refine_bracket(
    objective: &Objective<'_>,
    mut a: Probe,
    mut b: Probe,
    opts: &SolverOptions,
    iterations: &mut usize,
) -> Result<Probe, SolverError> {
    debug_assert!(a.delta < b.delta);
    let mut best = if a.g.abs() <= b.g.abs() { a } else { b };
    for _ in 0..opts.max_iterations {
        let mid = (a.delta * b.delta).sqrt();
        if !(mid > a.delta && mid < b.delta) {
            break; // interval exhausted at floating-point resolution
        }
        *iterations += 1;
        let Some(p) = objective.probe(mid)? else {
            break;
        };
        if p.g.abs() <= best.g.abs() {
            best = p;
        }
        let same_side_as_a = (p.g <= 0.0) == (a.g <= 0.0);
        if same_side_as_a {
            a = p;
        } else {
            b = p;
        }
        let width = b.delta - a.delta;
        if width <= opts.delta_tol(mid) && p.g.abs() <= opts.delta_tol(mid).max(opts.tol_abs) {
            break;
        }
    }
    Ok(best)
}

/// Direct fixed-point iteration `delta <- ratio(delta)`.
///
/// Offered as an accelerator when the map happens to contract; there is no
/// general convergence guarantee, so `solve_fixed_point` never relies on it.
pub fn fixed_point_iteration(
    spec: &MetricSpec,
    model: &dyn RateModel,
    prev: f64,
    start: f64,
    opts: &SolverOptions,
) -> Result<FixedPointResult, SolverError> {
    spec.validate()?;
    if !(prev > 0.0 && prev < 1.0) {
        return Err(SolverError::InvalidPrevalence(prev));
    }
    let objective = Objective { spec, model, prev };
    let (lo, hi) = {
        let (mlo, mhi) = model.domain();
        (mlo.max(opts.delta_min), mhi.min(opts.delta_max))
    };
    let mut delta = start.clamp(lo, hi);
    for iter in 1..=opts.max_iterations {
        let p = objective
            .probe(delta)?
            .ok_or(SolverError::NoFixedPoint { lo, hi, probes: 0 })?;
        let next = (delta - p.g).clamp(lo, hi);
        if (next - delta).abs() <= opts.delta_tol(delta) {
            let value = objective
                .value(p.tpr, p.tnr)
                .ok_or(SolverError::NoFixedPoint { lo, hi, probes: 0 })?;
            return Ok(FixedPointResult {
                delta_star: next,
                residual: p.g.abs(),
                tpr: p.tpr,
                tnr: p.tnr,
                metric_value_at_opt: value,
                iterations: iter,
            });
        }
        delta = next;
    }
    Err(SolverError::NoFixedPoint { lo, hi, probes: opts.max_iterations })
}

/// Solve the fixed point at each prevalence of a grid, in parallel.
///
/// Per-point failures are recorded in the output rather than aborting the
/// sweep, so a plot of `delta*(prev)` can still be drawn from the points that
/// converged.
pub fn sweep_delta_star(
    spec: &MetricSpec,
    model: &dyn RateModel,
    prev_grid: &[f64],
    opts: &SolverOptions,
) -> Vec<(f64, Result<FixedPointResult, SolverError>)> {
    prev_grid
        .par_iter()
        .map(|&prev| (prev, solve_fixed_point(spec, model, prev, opts)))
        .collect()
}
