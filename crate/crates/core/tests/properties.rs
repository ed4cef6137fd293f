//! Invariants over generated inputs, 1000 cases each.

mod support;

use autochaos::chaosnet::{chaosnet_features, skew_tent, ChaosNetConfig};
use autochaos::classifier::{class_prototypes, FitScope, NormalizationStats};
use autochaos::features::{extract, firing_time_bound};
use autochaos::{FeatureSet, TraceMode};
use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn extract_is_deterministic(sample in any_sample(), mode in any_mode()) {
        check_extract_deterministic(&sample, mode)?;
    }

    #[test]
    fn prediction_ignores_query_scale((protos, query, exp) in scale_case()) {
        check_scale_invariance(&protos, &query, exp)?;
    }

    #[test]
    fn trace_features_in_range(x in 0.0..=1.0f64, mode in any_mode()) {
        check_trace_ranges(x, mode)?;
    }

    #[test]
    fn match_never_exceeds_bound(x in mid_stimulus()) {
        check_match_within_bound(x)?;
    }

    #[test]
    fn pipeline_is_deterministic((rows, seed, mode) in pipeline_case()) {
        check_pipeline_deterministic(rows, seed, mode)?;
    }

    #[test]
    fn macro_f1_ignores_label_names((p, a, perm) in relabel_case()) {
        check_relabel_invariance(&p, &a, &perm)?;
    }

    #[test]
    fn bound_length_is_monotone(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for mode in [TraceMode::Bound, TraceMode::ClampedBound] {
            let t_lo = firing_time_bound(lo, mode).unwrap().firing_time_bound;
            let t_hi = firing_time_bound(hi, mode).unwrap().firing_time_bound;
            prop_assert!(t_lo <= t_hi);
        }
    }

    #[test]
    fn clamped_and_match_lengths_stay_in_source(x in 0.0..=1.0f64) {
        for mode in [TraceMode::ClampedBound, TraceMode::Match] {
            let t = firing_time_bound(x, mode).unwrap().firing_time_bound;
            prop_assert!((1..=1389).contains(&t));
        }
    }

    #[test]
    fn tm_is_prefix_of_tmfr(sample in any_sample(), mode in any_mode()) {
        let tm = extract(&sample, FeatureSet::TraceMean, mode).unwrap();
        let tmfr = extract(&sample, FeatureSet::TraceMeanFiringRate, mode).unwrap();
        prop_assert_eq!(tmfr.len(), 2 * sample.len());
        prop_assert_eq!(&tm.values[..], &tmfr.values[..sample.len()]);
    }

    #[test]
    fn skew_tent_stays_in_unit_interval(x in 0.0..=1.0f64, b in 0.001..0.999f64) {
        let y = skew_tent(x, b);
        prop_assert!((0.0..=1.0).contains(&y), "{} -> {}", x, y);
    }

    #[test]
    fn chaosnet_features_in_range(
        s in 0.0..=1.0f64,
        q in 0.01..0.99f64,
        b in 0.01..0.99f64,
        eps in prop_oneof![Just(0.1), Just(0.01), Just(0.001)],
    ) {
        let cfg = ChaosNetConfig::new(q, b, eps).unwrap().with_cap(2000).unwrap();
        let r = chaosnet_features(s, &cfg).unwrap();
        prop_assert!((1..=2000).contains(&r.firing_time));
        prop_assert!((0.0..=1.0).contains(&r.firing_rate));
        prop_assert!((0.0..=1.0).contains(&r.energy));
        prop_assert!((0.0..=1.0).contains(&r.entropy));
    }

    #[test]
    fn full_scope_normalization_spans_unit_interval(
        rows in prop::collection::vec(prop::collection::vec(-1e3..1e3f64, 3), 2..30)
    ) {
        let stats = NormalizationStats::fit(&rows, FitScope::Full).unwrap();
        let z = stats.apply_all(&rows).unwrap();
        for j in 0..3 {
            let col: Vec<f64> = z.iter().map(|r| r[j]).collect();
            prop_assert!(col.iter().all(|v| (0.0..=1.0).contains(v)));
            if stats.max[j] > stats.min[j] {
                prop_assert!(col.contains(&0.0) && col.contains(&1.0));
            }
        }
    }

    #[test]
    fn prototypes_ignore_row_order(
        rows in prop::collection::vec(prop::collection::vec(0.0..1.0f64, 4), 6..30),
        seed in any::<u64>(),
    ) {
        let labels: Vec<usize> = (0..rows.len()).map(|i| i % 3).collect();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        let mut state = seed;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let shuffled: Vec<Vec<f64>> = order.iter().map(|&i| rows[i].clone()).collect();
        let shuffled_labels: Vec<usize> = order.iter().map(|&i| labels[i]).collect();
        let a = class_prototypes(&rows, &labels, 3).unwrap();
        let b = class_prototypes(&shuffled, &shuffled_labels, 3).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            for (x, y) in pa.mean.iter().zip(&pb.mean) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
