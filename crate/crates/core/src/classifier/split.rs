use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRAIN_FRACTION: f64 = 0.8;

/// Row indices of a train/test partition, each list ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Stratified split: each class sends `round(count * (1 - train_fraction))`
/// of its rows to the test side, keeping at least one row for training.
/// Classes are shuffled in ascending class order from one seeded stream.
pub fn stratified_split(
    labels: &[usize],
    classes: usize,
    train_fraction: f64,
    seed: u64,
) -> Result<Split> {
    if !(train_fraction > 0.0 && train_fraction <= 1.0) {
        return Err(Error::Config(format!(
            "train fraction {train_fraction} outside (0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::with_capacity(labels.len());
    let mut test = Vec::new();
    for class in 0..classes {
        let mut rows: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if rows.is_empty() {
            return Err(Error::EmptyClass(class));
        }
        rows.shuffle(&mut rng);
        let wanted = (rows.len() as f64 * (1.0 - train_fraction)).round() as usize;
        let n_test = wanted.min(rows.len() - 1);
        test.extend_from_slice(&rows[..n_test]);
        train.extend_from_slice(&rows[n_test..]);
    }
    if test.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(Split { train, test })
}
