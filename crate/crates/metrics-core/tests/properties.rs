//! Property checks for the metric catalogue: monotonicity, agreement of the
//! closed-form derivative ratios with finite differences, coincidence
//! identities, range bounds and prefactor invariance.

use metrics_core::{MetricSpec, RateTriple};
use proptest::prelude::{prop_assert, prop_assume, proptest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn catalogue() -> Vec<MetricSpec> {
    vec![
        MetricSpec::Accuracy,
        MetricSpec::weighted_accuracy(0.3).unwrap(),
        MetricSpec::BalancedAccuracy,
        MetricSpec::Jaccard,
        MetricSpec::f_beta(0.5).unwrap(),
        MetricSpec::f_beta(1.0).unwrap(),
        MetricSpec::f_beta(1.5).unwrap(),
        MetricSpec::Mcc,
        MetricSpec::Kappa,
        MetricSpec::YuleQ,
        MetricSpec::YuleY,
        MetricSpec::robust_f(0.0, 0.1, 1.0).unwrap(),
        MetricSpec::robust_f(1.0, 0.5, 4.0).unwrap(),
        MetricSpec::robust_f_with_beta(0.5, 0.2, 2.25, 1.5).unwrap(),
        MetricSpec::robust_mcc(0.05).unwrap(),
        MetricSpec::robust_mcc(1.0).unwrap(),
    ]
}

fn triple(tpr: f64, tnr: f64, prev: f64) -> RateTriple {
    RateTriple::new(tpr, tnr, prev).unwrap()
}

fn random_interior(rng: &mut ChaCha12Rng, margin: f64) -> RateTriple {
    let mut u = || margin + (1.0 - 2.0 * margin) * rng.gen::<f64>();
    let (tpr, tnr, prev) = (u(), u(), u());
    triple(tpr, tnr, prev)
}

/// Ratio of central finite differences of the metric value.
fn fd_ratio(spec: &MetricSpec, r: RateTriple, h: f64) -> f64 {
    let v = |tpr: f64, tnr: f64| spec.value(triple(tpr, tnr, r.prev)).unwrap();
    let d_tnr = v(r.tpr, r.tnr + h) - v(r.tpr, r.tnr - h);
    let d_tpr = v(r.tpr + h, r.tnr) - v(r.tpr - h, r.tnr);
    d_tnr / d_tpr
}

#[test]
fn derivative_ratio_matches_finite_differences() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
    let h = 1e-5;
    for spec in catalogue() {
        for _ in 0..1000 {
            let r = random_interior(&mut rng, 0.02);
            let closed = spec.derivative_ratio(r).unwrap();
            let fd = fd_ratio(&spec, r, h);
            let rel = (closed - fd).abs() / closed.abs().max(1e-12);
            assert!(rel <= 1e-5, "{spec} at {r:?}: closed={closed} fd={fd} rel={rel:.2e}");
        }
    }
}

#[test]
fn metrics_are_monotone_in_tpr_and_tnr() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for spec in catalogue() {
        for _ in 0..500 {
            let r = random_interior(&mut rng, 0.01);
            let eps = rng.gen::<f64>() * 1e-3 + 1e-6;
            let base = spec.value(r).unwrap();
            let up_tpr = spec.value(triple(r.tpr + eps, r.tnr, r.prev)).unwrap();
            let up_tnr = spec.value(triple(r.tpr, r.tnr + eps, r.prev)).unwrap();
            assert!(up_tpr >= base - 1e-12, "{spec}: tpr step decreased value at {r:?}");
            assert!(up_tnr >= base - 1e-12, "{spec}: tnr step decreased value at {r:?}");
        }
    }
}

#[test]
fn value_ranges() {
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    let unit = [
        MetricSpec::Accuracy,
        MetricSpec::weighted_accuracy(0.3).unwrap(),
        MetricSpec::BalancedAccuracy,
        MetricSpec::Jaccard,
        MetricSpec::f_beta(0.5).unwrap(),
        MetricSpec::f_beta(1.5).unwrap(),
    ];
    let signed = [
        MetricSpec::Mcc,
        MetricSpec::Kappa,
        MetricSpec::YuleQ,
        MetricSpec::YuleY,
        MetricSpec::robust_mcc(0.1).unwrap(),
    ];
    for _ in 0..2000 {
        let r = random_interior(&mut rng, 1e-4);
        for spec in &unit {
            let v = spec.value(r).unwrap();
            assert!((0.0..=1.0).contains(&v), "{spec} out of [0,1]: {v} at {r:?}");
        }
        for spec in &signed {
            let v = spec.value(r).unwrap();
            assert!((-1.0..=1.0).contains(&v), "{spec} out of [-1,1]: {v} at {r:?}");
        }
    }
}

#[test]
fn robust_f_prefactor_does_not_affect_ratio() {
    // the normalizer depends on prev only, so beta must not move the ratio
    let mut rng = ChaCha12Rng::seed_from_u64(21);
    for _ in 0..200 {
        let r = random_interior(&mut rng, 0.01);
        let a = MetricSpec::robust_f_with_beta(0.3, 0.2, 1.0, 1.0).unwrap();
        let b = MetricSpec::robust_f_with_beta(0.3, 0.2, 1.0, 2.5).unwrap();
        let ra = a.derivative_ratio(r).unwrap();
        let rb = b.derivative_ratio(r).unwrap();
        assert_eq!(ra, rb);
    }
}

proptest! {
    #[test]
    fn yule_q_and_y_share_their_ratio(
        tpr in 0.01f64..0.99,
        tnr in 0.01f64..0.99,
        prev in 0.01f64..0.99,
    ) {
        let r = triple(tpr, tnr, prev);
        let q = MetricSpec::YuleQ.derivative_ratio(r).unwrap();
        let y = MetricSpec::YuleY.derivative_ratio(r).unwrap();
        prop_assert!((q - y).abs() <= 1e-12 * q.abs());
    }

    #[test]
    fn jaccard_and_f1_share_their_ratio(
        tpr in 0.01f64..0.99,
        tnr in 0.01f64..0.99,
        prev in 0.01f64..0.99,
    ) {
        let r = triple(tpr, tnr, prev);
        let jac = MetricSpec::Jaccard.derivative_ratio(r).unwrap();
        let f1 = MetricSpec::f_beta(1.0).unwrap().derivative_ratio(r).unwrap();
        prop_assert!((jac - f1).abs() <= 1e-12 * jac.abs());
    }

    #[test]
    fn robust_f_pointwise_limit_is_f_beta(
        tpr in 0.01f64..0.99,
        tnr in 0.01f64..0.99,
        prev in 0.05f64..0.95,
        beta in 0.5f64..2.0,
    ) {
        let r = triple(tpr, tnr, prev);
        let frb = MetricSpec::robust_f_with_beta(0.0, 1e-8, beta * beta, beta).unwrap();
        let fb = MetricSpec::f_beta(beta).unwrap();
        prop_assert!((frb.value(r).unwrap() - fb.value(r).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn counts_round_trip_consistency(
        n11 in 0u64..10_000,
        n10 in 0u64..10_000,
        n01 in 0u64..10_000,
        n00 in 0u64..10_000,
    ) {
        use metrics_core::ConfusionCounts;
        let c = ConfusionCounts::new(n11, n10, n01, n00);
        prop_assume!(c.total() > 0);
        let r = c.to_rates().unwrap();
        prop_assert!((r.p11 + r.p10 + r.p01 + r.p00 - 1.0).abs() <= 1e-12);
        prop_assert!((r.prevalence() - c.positives() as f64 / c.total() as f64).abs() <= 1e-15);
    }
}
