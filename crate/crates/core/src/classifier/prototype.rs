use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How cosine similarities are turned into a class decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionRule {
    /// Most similar prototype wins.
    #[default]
    Max,
    /// Least similar prototype wins.
    Min,
}

impl DecisionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DecisionRule::Max => "max",
            DecisionRule::Min => "min",
        }
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for DecisionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(DecisionRule::Max),
            "min" => Ok(DecisionRule::Min),
            other => Err(Error::Config(format!(
                "unknown decision rule {other:?} (expected max or min)"
            ))),
        }
    }
}

/// Mean representation vector of one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassPrototype {
    pub class: usize,
    pub mean: Vec<f64>,
}

/// Componentwise class means. Sums run in ascending sample order within
/// each class, which is the order the caller supplies.
pub fn class_prototypes<R: AsRef<[f64]>>(
    features: &[R],
    labels: &[usize],
    classes: usize,
) -> Result<Vec<ClassPrototype>> {
    if features.len() != labels.len() {
        return Err(Error::LengthMismatch {
            predicted: features.len(),
            actual: labels.len(),
        });
    }
    let width = features.first().map_or(0, |f| f.as_ref().len());
    let mut sums = vec![vec![0.0; width]; classes];
    let mut counts = vec![0usize; classes];
    for (row, &label) in features.iter().zip(labels) {
        let row = row.as_ref();
        if label >= classes {
            return Err(Error::Config(format!(
                "label {label} outside {classes} classes"
            )));
        }
        if row.len() != width {
            return Err(Error::Width {
                expected: width,
                found: row.len(),
            });
        }
        counts[label] += 1;
        for (s, &x) in sums[label].iter_mut().zip(row) {
            *s += x;
        }
    }
    sums.into_iter()
        .zip(counts)
        .enumerate()
        .map(|(class, (sum, count))| {
            if count == 0 {
                return Err(Error::EmptyClass(class));
            }
            let mean = sum.into_iter().map(|s| s / count as f64).collect();
            Ok(ClassPrototype { class, mean })
        })
        .collect()
}

/// Cosine of the angle between `a` and `b`; 0 when either has zero norm.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
}

/// Class index chosen by `rule`; ties go to the lowest class index.
pub fn predict(prototypes: &[ClassPrototype], feature: &[f64], rule: DecisionRule) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for proto in prototypes {
        let sim = cosine_similarity(&proto.mean, feature);
        let better = match best {
            None => true,
            Some((_, b)) => match rule {
                DecisionRule::Max => sim > b,
                DecisionRule::Min => sim < b,
            },
        };
        if better {
            best = Some((proto.class, sim));
        }
    }
    best.map_or(0, |(class, _)| class)
}
