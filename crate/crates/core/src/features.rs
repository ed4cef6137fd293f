//! Neural traces on the Champernowne orbit and the TM / TM-FR features.
//!
//! A normalized stimulus `x` fixes a three-digit pattern `N' = floor(1000 x)`
//! and a firing time bound `T`; its neural trace is the first `T` orbit
//! values `c, f(c), ..., f^(T-1)(c)`. The trace mean is the TM feature and
//! the fraction of trace values above 0.5 is the firing rate.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::champernowne::{ChampernowneSource, Orbit, SOURCE_LEN};
use crate::error::{Error, Result};

/// Firing threshold for the rate feature; values must strictly exceed it.
pub const FIRING_THRESHOLD: f64 = 0.5;

/// Longest bound-mode trace, reached at `N' = 999`.
pub const MAX_BOUND: usize = 3 * 999 - 111;

/// How the trace length is derived from a stimulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceMode {
    /// `T = max(3N' - 111, 1)`; steps past the truncated constant read as 0.
    #[default]
    Bound,
    /// As `Bound` but capped at the 1389 digits of the source.
    ClampedBound,
    /// Stop where the orbit first shows the stimulus' three decimals.
    Match,
}

impl TraceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceMode::Bound => "bound",
            TraceMode::ClampedBound => "clamped",
            TraceMode::Match => "match",
        }
    }
}

impl fmt::Display for TraceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for TraceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bound" => Ok(TraceMode::Bound),
            "clamped" | "clamped-bound" => Ok(TraceMode::ClampedBound),
            "match" => Ok(TraceMode::Match),
            other => Err(Error::Config(format!(
                "unknown trace mode {other:?} (expected bound, clamped or match)"
            ))),
        }
    }
}

/// Which features a stimulus contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureSet {
    /// One value per input feature: the trace mean.
    #[serde(rename = "tm")]
    TraceMean,
    /// Two values per input feature: trace mean and firing rate.
    #[serde(rename = "tmfr")]
    TraceMeanFiringRate,
}

impl FeatureSet {
    pub fn width(self, inputs: usize) -> usize {
        match self {
            FeatureSet::TraceMean => inputs,
            FeatureSet::TraceMeanFiringRate => 2 * inputs,
        }
    }

    pub fn kind(self) -> FeatureKind {
        match self {
            FeatureSet::TraceMean => FeatureKind::TraceMean,
            FeatureSet::TraceMeanFiringRate => FeatureKind::TraceMeanFiringRate,
        }
    }

    /// Column names in output order: `mean_1..mean_n` then `rate_1..rate_n`.
    pub fn column_names(self, inputs: usize) -> Vec<String> {
        let means = (1..=inputs).map(|i| format!("mean_{i}"));
        match self {
            FeatureSet::TraceMean => means.collect(),
            FeatureSet::TraceMeanFiringRate => means
                .chain((1..=inputs).map(|i| format!("rate_{i}")))
                .collect(),
        }
    }
}

/// Tag carried by an extracted feature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureKind {
    TraceMean,
    TraceMeanFiringRate,
    ChaosNet,
}

/// Extracted chaotic features of one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub kind: FeatureKind,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>, kind: FeatureKind) -> Self {
        Self { values, kind }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Trace length and pattern derived from one stimulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSpec {
    pub stimulus: f64,
    pub pattern_number: u16,
    pub firing_time_bound: usize,
    pub mode: TraceMode,
}

/// `min(floor(1000 x), 999)`: the stimulus' first three decimals.
pub fn pattern_number(stimulus: f64) -> u16 {
    ((stimulus * 1000.0).floor() as i64).clamp(0, 999) as u16
}

fn check_stimulus(stimulus: f64) -> Result<()> {
    if (0.0..=1.0).contains(&stimulus) {
        Ok(())
    } else {
        Err(Error::StimulusRange(stimulus))
    }
}

/// Trace lengths in match mode, indexed by pattern number.
fn match_lengths() -> &'static [usize; 1000] {
    static TABLE: OnceLock<[usize; 1000]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let source = ChampernowneSource::shared();
        let mut table = [SOURCE_LEN; 1000];
        for (n, slot) in table.iter_mut().enumerate() {
            let pattern = [(n / 100) as u8, (n / 10 % 10) as u8, (n % 10) as u8];
            if let Some(offset) = source.find_pattern(pattern).expect("digits in range") {
                *slot = offset.max(1);
            }
        }
        table
    })
}

/// Derive the trace length for a stimulus in `[0, 1]`.
///
/// In match mode `T` counts the orbit steps taken before the pattern shows
/// up, so the trace ends on the value just ahead of the match; a pattern
/// that never occurs in the truncated digits runs the full 1389 steps.
pub fn firing_time_bound(stimulus: f64, mode: TraceMode) -> Result<TraceSpec> {
    check_stimulus(stimulus)?;
    let n = pattern_number(stimulus);
    let raw = 3 * i64::from(n) - 111;
    let firing_time_bound = match mode {
        TraceMode::Bound => raw.max(1) as usize,
        TraceMode::ClampedBound => raw.clamp(1, SOURCE_LEN as i64) as usize,
        TraceMode::Match => match_lengths()[usize::from(n)],
    };
    Ok(TraceSpec {
        stimulus,
        pattern_number: n,
        firing_time_bound,
        mode,
    })
}

/// `T` consecutive orbit values starting from the constant itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub values: Vec<f64>,
    pub spec: TraceSpec,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn build_trace(orbit: &Orbit, spec: TraceSpec) -> Trace {
    let values = (0..spec.firing_time_bound)
        .map(|k| orbit.value(k))
        .collect();
    Trace { values, spec }
}

pub fn trace_mean(trace: &Trace) -> f64 {
    trace.values.iter().sum::<f64>() / trace.len() as f64
}

pub fn firing_rate(trace: &Trace) -> f64 {
    let above = trace
        .values
        .iter()
        .filter(|&&v| v > FIRING_THRESHOLD)
        .count();
    above as f64 / trace.len() as f64
}

/// Trace mean and firing rate of the first `len` orbit values, without
/// materializing the trace. Zero-padded steps add nothing to either sum,
/// so the result is bit-identical to `trace_mean`/`firing_rate`.
pub fn trace_stats(orbit: &Orbit, len: usize) -> (f64, f64) {
    let live = orbit.informative(len);
    let sum: f64 = live.iter().sum();
    let above = live.iter().filter(|&&v| v > FIRING_THRESHOLD).count();
    (sum / len as f64, above as f64 / len as f64)
}

/// TM / TM-FR feature extractor over a fixed orbit.
#[derive(Debug, Clone, Copy)]
pub struct Autochaos<'a> {
    orbit: &'a Orbit,
    features: FeatureSet,
    mode: TraceMode,
}

impl Autochaos<'static> {
    pub fn new(features: FeatureSet, mode: TraceMode) -> Self {
        Self::with_orbit(Orbit::shared(), features, mode)
    }
}

impl<'a> Autochaos<'a> {
    pub fn with_orbit(orbit: &'a Orbit, features: FeatureSet, mode: TraceMode) -> Self {
        Self {
            orbit,
            features,
            mode,
        }
    }

    pub fn features(&self) -> FeatureSet {
        self.features
    }

    pub fn mode(&self) -> TraceMode {
        self.mode
    }

    /// Features of one normalized sample, laid out as
    /// `[mean_1..mean_n, rate_1..rate_n]` for TM-FR.
    pub fn extract(&self, sample: &[f64]) -> Result<FeatureVector> {
        let n = sample.len();
        let mut values = vec![0.0; self.features.width(n)];
        for (j, &x) in sample.iter().enumerate() {
            let spec = firing_time_bound(x, self.mode)?;
            let (mean, rate) = trace_stats(self.orbit, spec.firing_time_bound);
            values[j] = mean;
            if self.features == FeatureSet::TraceMeanFiringRate {
                values[n + j] = rate;
            }
        }
        Ok(FeatureVector::new(values, self.features.kind()))
    }
}

/// Convenience wrapper over the shared default-width orbit.
pub fn extract(sample: &[f64], features: FeatureSet, mode: TraceMode) -> Result<FeatureVector> {
    Autochaos::new(features, mode).extract(sample)
}
