use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precision, recall and F1 of one class in a one-vs-rest reading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScore {
    pub class: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

fn check(predicted: &[usize], actual: &[usize]) -> Result<()> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            predicted: predicted.len(),
            actual: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyScore);
    }
    Ok(())
}

/// `confusion[truth][predicted]` counts over classes `0..classes`.
pub fn confusion_matrix(
    predicted: &[usize],
    actual: &[usize],
    classes: usize,
) -> Result<Vec<Vec<usize>>> {
    check(predicted, actual)?;
    let mut m = vec![vec![0usize; classes]; classes];
    for (&p, &a) in predicted.iter().zip(actual) {
        if p >= classes || a >= classes {
            return Err(Error::Config(format!(
                "label {} outside {classes} classes",
                p.max(a)
            )));
        }
        m[a][p] += 1;
    }
    Ok(m)
}

fn score(predicted: &[usize], actual: &[usize], class: usize) -> ClassScore {
    let (mut tp, mut fp, mut fnn) = (0usize, 0usize, 0usize);
    for (&p, &a) in predicted.iter().zip(actual) {
        match (p == class, a == class) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fnn += 1,
            (false, false) => {}
        }
    }
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fnn);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    ClassScore {
        class,
        precision,
        recall,
        f1,
        support: tp + fnn,
    }
}

/// Per-class scores for every label seen in either list, ascending.
pub fn class_scores(predicted: &[usize], actual: &[usize]) -> Result<Vec<ClassScore>> {
    check(predicted, actual)?;
    let labels: BTreeSet<usize> = predicted.iter().chain(actual).copied().collect();
    Ok(labels
        .into_iter()
        .map(|c| score(predicted, actual, c))
        .collect())
}

/// Unweighted mean of per-class F1 over the labels present in either list.
pub fn macro_f1(predicted: &[usize], actual: &[usize]) -> Result<f64> {
    let scores = class_scores(predicted, actual)?;
    Ok(scores.iter().map(|s| s.f1).sum::<f64>() / scores.len() as f64)
}
