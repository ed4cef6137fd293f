//! Oracles and invariant checks shared by the integration test targets.
//!
//! The oracles never call into the library's digit or trace code; every
//! expected value is rebuilt from the decimal string of 1..=499.

#![allow(dead_code)]

use std::path::PathBuf;

use autochaos::chaosnet::{skew_tent, ChaosNetConfig};
use autochaos::classifier::pipeline::run_pipeline;
use autochaos::classifier::{macro_f1, predict, ClassPrototype, DecisionRule, PipelineConfig};
use autochaos::dataset::Dataset;
use autochaos::features::{firing_time_bound, Autochaos};
use autochaos::{FeatureSet, TraceMode};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// `"123456789101112...499"` built with `to_string`.
pub fn digit_string() -> String {
    (1..=499u32).map(|n| n.to_string()).collect()
}

/// Expected trace length, recomputed from the definition.
pub fn oracle_length(stimulus: f64, mode: TraceMode, digits: &str) -> usize {
    let n = ((stimulus * 1000.0).floor() as i64).min(999);
    match mode {
        TraceMode::Bound => (3 * n - 111).max(1) as usize,
        TraceMode::ClampedBound => (3 * n - 111).clamp(1, 1389) as usize,
        TraceMode::Match => match digits.find(&format!("{n:03}")) {
            Some(offset) => offset.max(1),
            None => 1389,
        },
    }
}

/// Exact trace statistics from the full digit tails.
///
/// Step `k` of the orbit is `0.d_{k+1}...d_1389` exactly. Scaling by
/// `10^1389` turns every tail into the integer `tail_k * 10^k`, so prefix
/// sums stay exact until the final division.
pub struct ExactTraces {
    digits: String,
    prefix: Vec<BigUint>,
    above: Vec<usize>,
    scale: BigUint,
}

impl ExactTraces {
    pub fn new() -> Self {
        let digits = digit_string();
        let len = digits.len();
        let ten = BigUint::from(10u32);
        let scale = ten.pow(len as u32);
        let mut prefix = vec![BigUint::zero()];
        let mut above = vec![0usize];
        for k in 0..len {
            let tail = BigUint::parse_bytes(&digits.as_bytes()[k..], 10).unwrap();
            let denom = ten.pow((len - k) as u32);
            let is_above = &tail * 2u32 > denom;
            let scaled = tail * ten.pow(k as u32);
            prefix.push(prefix[k].clone() + scaled);
            above.push(above[k] + usize::from(is_above));
        }
        Self {
            digits,
            prefix,
            above,
            scale,
        }
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    /// (mean, rate) of the first `t` orbit values; steps past the last
    /// digit are 0.
    pub fn stats(&self, t: usize) -> (f64, f64) {
        let live = t.min(self.digits.len());
        let num = &self.prefix[live] * BigUint::from(10u32).pow(30);
        let den = &self.scale * BigUint::from(t);
        let mean = (num / den).to_f64().unwrap() / 1e30;
        (mean, self.above[live] as f64 / t as f64)
    }
}

/// Plain loop over the neuron definition, with no shortcuts.
pub fn replay_chaosnet(stimulus: f64, cfg: &ChaosNetConfig) -> (usize, f64, f64, f64) {
    let mut x = cfg.initial;
    let mut trace = Vec::new();
    loop {
        trace.push(x);
        if (x - stimulus).abs() < cfg.noise || trace.len() >= cfg.cap {
            break;
        }
        x = skew_tent(x, cfg.skew);
    }
    let t = trace.len();
    let rate = trace.iter().filter(|&&v| v > cfg.threshold).count() as f64 / t as f64;
    let energy = trace.iter().map(|v| v * v).sum::<f64>() / t as f64;
    let entropy = if rate == 0.0 || rate == 1.0 {
        0.0
    } else {
        -(rate * rate.log2() + (1.0 - rate) * (1.0 - rate).log2())
    };
    (t, rate, energy, entropy)
}

pub fn any_mode() -> impl Strategy<Value = TraceMode> {
    prop_oneof![
        Just(TraceMode::Bound),
        Just(TraceMode::ClampedBound),
        Just(TraceMode::Match)
    ]
}

pub fn any_sample() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, 1..8)
}

pub fn check_extract_deterministic(sample: &[f64], mode: TraceMode) -> Result<(), TestCaseError> {
    let ex = Autochaos::new(FeatureSet::TraceMeanFiringRate, mode);
    let a = ex.extract(sample).unwrap();
    let b = ex.extract(sample).unwrap();
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    prop_assert_eq!(bits(&a.values), bits(&b.values));
    Ok(())
}

/// Prototype rows, a query vector and a power-of-two scale.
pub fn scale_case() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, i32)> {
    (1usize..6, 2usize..5).prop_flat_map(|(width, classes)| {
        (
            prop::collection::vec(prop::collection::vec(0.0..1.0f64, width), classes),
            prop::collection::vec(0.0..1.0f64, width),
            -20i32..20,
        )
    })
}

/// Scaling by a power of two is exact, so predictions must not move.
pub fn check_scale_invariance(
    protos: &[Vec<f64>],
    query: &[f64],
    exp: i32,
) -> Result<(), TestCaseError> {
    let prototypes: Vec<ClassPrototype> = protos
        .iter()
        .enumerate()
        .map(|(class, mean)| ClassPrototype {
            class,
            mean: mean.clone(),
        })
        .collect();
    let scaled: Vec<f64> = query.iter().map(|x| x * 2f64.powi(exp)).collect();
    for rule in [DecisionRule::Max, DecisionRule::Min] {
        prop_assert_eq!(
            predict(&prototypes, query, rule),
            predict(&prototypes, &scaled, rule)
        );
    }
    Ok(())
}

pub fn check_trace_ranges(stimulus: f64, mode: TraceMode) -> Result<(), TestCaseError> {
    let v = Autochaos::new(FeatureSet::TraceMeanFiringRate, mode)
        .extract(&[stimulus])
        .unwrap();
    let (mean, rate) = (v.values[0], v.values[1]);
    prop_assert!((0.0..1.0).contains(&mean), "mean {}", mean);
    prop_assert!((0.0..=1.0).contains(&rate), "rate {}", rate);
    Ok(())
}

/// Stimuli whose first three decimals are 100..=499.
pub fn mid_stimulus() -> impl Strategy<Value = f64> {
    (100u32..500, 0.0..1.0f64).prop_map(|(n, frac)| (f64::from(n) + frac * 0.999) / 1000.0)
}

pub fn check_match_within_bound(stimulus: f64) -> Result<(), TestCaseError> {
    let m = firing_time_bound(stimulus, TraceMode::Match).unwrap();
    let b = firing_time_bound(stimulus, TraceMode::Bound).unwrap();
    prop_assert!(
        m.firing_time_bound <= b.firing_time_bound,
        "pattern {}: match {} > bound {}",
        m.pattern_number,
        m.firing_time_bound,
        b.firing_time_bound
    );
    Ok(())
}

/// Labels over `k` classes and a relabeling permutation of `0..k`.
pub fn relabel_case() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    (2usize..6, 1usize..60).prop_flat_map(|(k, m)| {
        (
            prop::collection::vec(0..k, m),
            prop::collection::vec(0..k, m),
            Just((0..k).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

pub fn check_relabel_invariance(
    predicted: &[usize],
    actual: &[usize],
    perm: &[usize],
) -> Result<(), TestCaseError> {
    let p2: Vec<usize> = predicted.iter().map(|&c| perm[c]).collect();
    let a2: Vec<usize> = actual.iter().map(|&c| perm[c]).collect();
    let before = macro_f1(predicted, actual).unwrap();
    let after = macro_f1(&p2, &a2).unwrap();
    prop_assert!((before - after).abs() < 1e-12, "{} vs {}", before, after);
    Ok(())
}

/// Small two-class tables with a split seed and trace mode.
pub fn pipeline_case() -> impl Strategy<Value = (Vec<Vec<f64>>, u64, TraceMode)> {
    (
        prop::collection::vec(prop::collection::vec(0.0..10.0f64, 3), 12..40),
        any::<u64>(),
        any_mode(),
    )
}

/// Repeated and parallel runs agree with the first, field for field.
pub fn check_pipeline_deterministic(
    rows: Vec<Vec<f64>>,
    seed: u64,
    mode: TraceMode,
) -> Result<(), TestCaseError> {
    let labels: Vec<usize> = (0..rows.len()).map(|i| i % 2).collect();
    let data = Dataset::new(
        "generated",
        rows,
        labels,
        vec!["a".into(), "b".into()],
        vec!["x".into(), "y".into(), "z".into()],
    )
    .unwrap();
    let cfg = PipelineConfig {
        seed,
        mode,
        ..PipelineConfig::default()
    };
    let features = FeatureSet::TraceMeanFiringRate;
    let first = run_pipeline(&data, features, &cfg).unwrap();
    let again = run_pipeline(&data, features, &cfg).unwrap();
    let parallel = run_pipeline(
        &data,
        features,
        &PipelineConfig {
            parallel: true,
            ..cfg
        },
    )
    .unwrap();
    prop_assert_eq!(&first, &again);
    prop_assert_eq!(&first, &parallel);
    Ok(())
}
