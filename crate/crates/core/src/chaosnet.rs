//! Skew-tent-map ChaosNet comparator.
//!
//! Each stimulus drives one chaotic neuron started at `q`; the neuron fires
//! until its state comes within `epsilon` of the stimulus. The trace yields
//! four features: firing time, firing rate, energy and entropy. Energy is
//! the mean squared trace value and entropy the two-symbol Shannon entropy
//! (bits) of the trace thresholded at the discrimination threshold.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::classifier::{Extractor, FeatureKind, FeatureVector};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 10_000;

/// Skew tent map: `x / b` below the peak, `(1 - x) / (1 - b)` from it on.
pub fn skew_tent(x: f64, b: f64) -> f64 {
    if x < b {
        x / b
    } else {
        (1.0 - x) / (1.0 - b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaosNetConfig {
    /// Initial neural activity `q`.
    pub initial: f64,
    /// Skew (peak position) `b` of the tent map.
    pub skew: f64,
    /// Noise threshold `epsilon` that halts the trace.
    pub noise: f64,
    /// Values above this count as firing.
    pub threshold: f64,
    /// Longest trace computed.
    pub cap: usize,
}

impl ChaosNetConfig {
    /// Configuration with the discrimination threshold set to the skew.
    pub fn new(initial: f64, skew: f64, noise: f64) -> Result<Self> {
        let cfg = Self {
            initial,
            skew,
            noise,
            threshold: skew,
            cap: DEFAULT_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        self.cap = cap;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let open = |v: f64| v > 0.0 && v < 1.0;
        if !open(self.initial) || !open(self.skew) || !open(self.threshold) {
            return Err(Error::Config(format!(
                "initial {}, skew {} and threshold {} must lie in (0, 1)",
                self.initial, self.skew, self.threshold
            )));
        }
        if !(self.noise > 0.0 && self.noise.is_finite()) {
            return Err(Error::Config(format!(
                "noise {} must be positive",
                self.noise
            )));
        }
        if self.cap == 0 {
            return Err(Error::Config("trace cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// The four features of one neuron's response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeuronResponse {
    pub firing_time: usize,
    pub firing_rate: f64,
    pub energy: f64,
    pub entropy: f64,
    /// The trace stopped at the cap rather than converging.
    pub capped: bool,
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }
}

pub fn chaosnet_features(stimulus: f64, cfg: &ChaosNetConfig) -> Result<NeuronResponse> {
    if !(0.0..=1.0).contains(&stimulus) {
        return Err(Error::StimulusRange(stimulus));
    }
    let mut x = cfg.initial;
    let mut steps = 0usize;
    let mut above = 0usize;
    let mut energy = 0.0;
    let capped = loop {
        steps += 1;
        if x > cfg.threshold {
            above += 1;
        }
        energy += x * x;
        if (x - stimulus).abs() < cfg.noise {
            break false;
        }
        if steps >= cfg.cap {
            break true;
        }
        if x == 0.0 {
            // 0 is a fixed point: every remaining step adds nothing and
            // fails the same halting test, so the trace runs to the cap.
            steps = cfg.cap;
            break true;
        }
        x = skew_tent(x, cfg.skew);
    };
    let firing_rate = above as f64 / steps as f64;
    Ok(NeuronResponse {
        firing_time: steps,
        firing_rate,
        energy: energy / steps as f64,
        entropy: binary_entropy(firing_rate),
        capped,
    })
}

/// 4n-wide ChaosNet features laid out as
/// `[time_1..time_n, rate_1..rate_n, energy_1..energy_n, entropy_1..entropy_n]`.
#[derive(Debug)]
pub struct ChaosNetExtractor {
    cfg: ChaosNetConfig,
    capped: AtomicUsize,
}

impl ChaosNetExtractor {
    pub fn new(cfg: ChaosNetConfig) -> Self {
        Self {
            cfg,
            capped: AtomicUsize::new(0),
        }
    }

    pub fn config(&self) -> &ChaosNetConfig {
        &self.cfg
    }

    /// Stimuli whose trace hit the cap so far.
    pub fn cap_hits(&self) -> usize {
        self.capped.load(Ordering::Relaxed)
    }
}

impl Extractor for ChaosNetExtractor {
    fn extract(&self, sample: &[f64]) -> Result<FeatureVector> {
        let n = sample.len();
        let mut values = vec![0.0; 4 * n];
        let mut capped = 0;
        for (j, &x) in sample.iter().enumerate() {
            let r = chaosnet_features(x, &self.cfg)?;
            values[j] = r.firing_time as f64;
            values[n + j] = r.firing_rate;
            values[2 * n + j] = r.energy;
            values[3 * n + j] = r.entropy;
            capped += usize::from(r.capped);
        }
        self.capped.fetch_add(capped, Ordering::Relaxed);
        Ok(FeatureVector::new(values, FeatureKind::ChaosNet))
    }
}

/// Hyperparameter grid searched by the ChaosNet model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub initial: Vec<f64>,
    pub skew: Vec<f64>,
    pub noise: Vec<f64>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

impl Default for Grid {
    /// `q` and `b` over 0.01, 0.08, ..., 0.99; `epsilon` in {0.1, 0.01, 0.001}.
    fn default() -> Self {
        let axis: Vec<f64> = (0..15).map(|i| f64::from(1 + 7 * i) / 100.0).collect();
        Self {
            initial: axis.clone(),
            skew: axis,
            noise: vec![0.1, 0.01, 0.001],
            cap: DEFAULT_CAP,
        }
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        self.initial.len() * self.skew.len() * self.noise.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Configurations in `initial`-major, then `skew`, then `noise` order.
    pub fn configs(&self) -> Result<Vec<ChaosNetConfig>> {
        if self.is_empty() {
            return Err(Error::Config("empty ChaosNet grid".into()));
        }
        let mut out = Vec::with_capacity(self.len());
        for &q in &self.initial {
            for &b in &self.skew {
                for &e in &self.noise {
                    out.push(ChaosNetConfig::new(q, b, e)?.with_cap(self.cap)?);
                }
            }
        }
        Ok(out)
    }
}
