use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which rows the raw-data normalizer is fitted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitScope {
    /// Every row, test rows included.
    #[default]
    Full,
    /// Training rows only; test rows are clamped into range.
    Train,
}

impl FitScope {
    pub fn as_str(self) -> &'static str {
        match self {
            FitScope::Full => "full",
            FitScope::Train => "train",
        }
    }
}

impl fmt::Display for FitScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for FitScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(FitScope::Full),
            "train" | "train-only" => Ok(FitScope::Train),
            other => Err(Error::Config(format!(
                "unknown normalization scope {other:?} (expected full or train)"
            ))),
        }
    }
}

/// Per-column minimum and maximum of a min-max normalizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationStats {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub scope: FitScope,
}

impl NormalizationStats {
    pub fn fit<R: AsRef<[f64]>>(rows: &[R], scope: FitScope) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyFit)?.as_ref();
        let mut min = first.to_vec();
        let mut max = first.to_vec();
        for row in &rows[1..] {
            let row = row.as_ref();
            if row.len() != min.len() {
                return Err(Error::Width {
                    expected: min.len(),
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                min[j] = min[j].min(x);
                max[j] = max[j].max(x);
            }
        }
        Ok(Self { min, max, scope })
    }

    pub fn width(&self) -> usize {
        self.min.len()
    }

    /// `(x - min) / (max - min)` clamped to `[0, 1]`; constant columns map to 0.
    pub fn apply(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.width() {
            return Err(Error::Width {
                expected: self.width(),
                found: row.len(),
            });
        }
        Ok(row
            .iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(&x, (&lo, &hi))| {
                let span = hi - lo;
                if span > 0.0 {
                    ((x - lo) / span).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            })
            .collect())
    }

    pub fn apply_all<R: AsRef<[f64]>>(&self, rows: &[R]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.apply(r.as_ref())).collect()
    }
}
