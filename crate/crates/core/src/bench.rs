//! Wall-clock timing of repeated evaluations.

use std::time::Instant;

use crate::chaosnet::Grid;
use crate::classifier::{evaluate, ModelId, PipelineConfig};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::report::{BenchReport, EvalReport};

/// Mean and sample standard deviation (n - 1 denominator); a single
/// sample has deviation 0.
pub fn timing_stats(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Times `iterations` full evaluations of one cell, run back to back.
///
/// Each timed run covers normalization, extraction, fitting and scoring;
/// loading the dataset is outside the clock. The score comes from the
/// last run, and every run must agree on it.
pub fn bench_cell(
    data: &Dataset,
    model: ModelId,
    cfg: &PipelineConfig,
    grid: &Grid,
    iterations: usize,
) -> Result<BenchReport> {
    if iterations == 0 {
        return Err(Error::Config("iterations must be at least 1".into()));
    }
    let mut times = Vec::with_capacity(iterations);
    let mut last: Option<EvalReport> = None;
    for _ in 0..iterations {
        let start = Instant::now();
        let report = evaluate(data, model, cfg, grid)?;
        times.push(start.elapsed().as_secs_f64());
        if let Some(prev) = &last {
            debug_assert_eq!(prev.macro_f1, report.macro_f1);
        }
        last = Some(report);
    }
    let report = last.expect("at least one iteration ran");
    let (mean_seconds, std_seconds) = timing_stats(&times);
    Ok(BenchReport {
        dataset: data.id.clone(),
        model,
        iterations,
        mean_seconds,
        std_seconds,
        macro_f1: report.macro_f1,
        per_class_f1: report.classes.iter().map(|c| c.f1).collect(),
        config: report.config,
    })
}
