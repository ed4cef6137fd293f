//! Evaluation and benchmark reports in TOML, CSV, JSON lines and plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chaosnet::ChaosNetConfig;
use crate::classifier::{ClassPrototype, DecisionRule, FitScope, ModelId, NormalizationStats};
use crate::error::{Error, Result};
use crate::features::TraceMode;

/// Output encoding shared by `eval` and `bench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Toml,
    Csv,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "toml" => Ok(Format::Toml),
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (expected table, toml, csv or json-lines)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub train_fraction: f64,
    pub mode: TraceMode,
    pub rule: DecisionRule,
    pub scope: FitScope,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: usize,
    pub name: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Hyperparameters ChaosNet ran with and how they were chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosNetSummary {
    pub config: ChaosNetConfig,
    pub grid_size: usize,
    pub train_macro_f1: f64,
    pub cap_hits: usize,
}

/// Everything one evaluation produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub model: ModelId,
    pub macro_f1: f64,
    pub config: RunConfig,
    pub train_rows: usize,
    pub test_rows: usize,
    pub classes: Vec<ClassReport>,
    /// `confusion[truth][predicted]`.
    pub confusion: Vec<Vec<usize>>,
    pub raw_normalization: NormalizationStats,
    pub feature_normalization: NormalizationStats,
    pub prototypes: Vec<ClassPrototype>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chaosnet: Option<ChaosNetSummary>,
    #[serde(default)]
    pub notes: Vec<String>,
}

pub const EVAL_CSV_HEADER: [&str; 13] = [
    "dataset",
    "model",
    "seed",
    "split",
    "mode",
    "rule",
    "scope",
    "class",
    "name",
    "precision",
    "recall",
    "f1",
    "support",
];

fn csv_text(header: &[&str], rows: Vec<Vec<String>>, with_header: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(format!("csv output: {e}"));
    if with_header {
        w.write_record(header).map_err(io)?;
    }
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits the UTF-8 it was given"))
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s =
        serde_json::to_string(value).map_err(|e| Error::Config(format!("json output: {e}")))?;
    s.push('\n');
    Ok(s)
}

impl EvalReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.to_table()),
            Format::Toml => self.to_toml(),
            Format::Csv => self.to_csv(true),
            Format::JsonLines => json_line(self),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(format!("toml output: {e}")))
    }

    /// Long-form rows: one per class, then a `macro` row whose precision and
    /// recall are unweighted means and whose support is the test size.
    pub fn to_csv(&self, with_header: bool) -> Result<String> {
        let c = &self.config;
        let prefix = |class: String, name: String| {
            vec![
                self.dataset.clone(),
                self.model.to_string(),
                c.seed.to_string(),
                c.train_fraction.to_string(),
                c.mode.to_string(),
                c.rule.to_string(),
                c.scope.to_string(),
                class,
                name,
            ]
        };
        let mut rows = Vec::with_capacity(self.classes.len() + 1);
        for cl in &self.classes {
            let mut row = prefix(cl.class.to_string(), cl.name.clone());
            row.extend([
                cl.precision.to_string(),
                cl.recall.to_string(),
                cl.f1.to_string(),
                cl.support.to_string(),
            ]);
            rows.push(row);
        }
        let k = self.classes.len().max(1) as f64;
        let mut row = prefix("macro".into(), String::new());
        row.extend([
            (self.classes.iter().map(|c| c.precision).sum::<f64>() / k).to_string(),
            (self.classes.iter().map(|c| c.recall).sum::<f64>() / k).to_string(),
            self.macro_f1.to_string(),
            self.test_rows.to_string(),
        ]);
        rows.push(row);
        csv_text(&EVAL_CSV_HEADER, rows, with_header)
    }

    pub fn to_table(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(out, "dataset   {}", self.dataset);
        let _ = writeln!(out, "model     {}", self.model);
        let _ = writeln!(
            out,
            "config    seed={} split={} mode={} rule={} scope={}",
            c.seed, c.train_fraction, c.mode, c.rule, c.scope
        );
        let _ = writeln!(
            out,
            "rows      train={} test={}",
            self.train_rows, self.test_rows
        );
        if let Some(cn) = &self.chaosnet {
            let _ = writeln!(
                out,
                "chaosnet  q={} b={} eps={} (best of {}, train F1 {:.4})",
                cn.config.initial, cn.config.skew, cn.config.noise, cn.grid_size, cn.train_macro_f1
            );
        }
        let _ = writeln!(out, "macro F1  {:.4}", self.macro_f1);
        let width = self
            .classes
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let _ = writeln!(
            out,
            "\n{:<5} {:<width$} {:>9} {:>9} {:>9} {:>7}",
            "class", "name", "precision", "recall", "f1", "support"
        );
        for cl in &self.classes {
            let _ = writeln!(
                out,
                "{:<5} {:<width$} {:>9.4} {:>9.4} {:>9.4} {:>7}",
                cl.class, cl.name, cl.precision, cl.recall, cl.f1, cl.support
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

/// Timing and score of one dataset/model cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub dataset: String,
    pub model: ModelId,
    pub iterations: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    pub macro_f1: f64,
    pub per_class_f1: Vec<f64>,
    pub config: RunConfig,
}

pub const BENCH_CSV_HEADER: [&str; 12] = [
    "dataset",
    "model",
    "iterations",
    "mean_seconds",
    "std_seconds",
    "macro_f1",
    "per_class_f1",
    "seed",
    "split",
    "mode",
    "rule",
    "scope",
];

impl BenchReport {
    fn csv_row(&self) -> Vec<String> {
        let per_class: Vec<String> = self.per_class_f1.iter().map(f64::to_string).collect();
        vec![
            self.dataset.clone(),
            self.model.to_string(),
            self.iterations.to_string(),
            self.mean_seconds.to_string(),
            self.std_seconds.to_string(),
            self.macro_f1.to_string(),
            per_class.join(";"),
            self.config.seed.to_string(),
            self.config.train_fraction.to_string(),
            self.config.mode.to_string(),
            self.config.rule.to_string(),
            self.config.scope.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct BenchFile<'a> {
    bench: &'a [BenchReport],
}

/// Renders a set of benchmark cells; CSV has one row per cell.
pub fn render_bench(reports: &[BenchReport], format: Format) -> Result<String> {
    match format {
        Format::Csv => csv_text(
            &BENCH_CSV_HEADER,
            reports.iter().map(BenchReport::csv_row).collect(),
            true,
        ),
        Format::JsonLines => reports.iter().map(json_line).collect(),
        Format::Toml => toml::to_string(&BenchFile { bench: reports })
            .map_err(|e| Error::Config(format!("toml output: {e}"))),
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<14} {:<9} {:>5} {:>12} {:>12} {:>8}",
                "dataset", "model", "iters", "mean_s", "std_s", "macro_f1"
            );
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:<14} {:<9} {:>5} {:>12.6} {:>12.6} {:>8.4}",
                    r.dataset, r.model, r.iterations, r.mean_seconds, r.std_seconds, r.macro_f1
                );
            }
            Ok(out)
        }
    }
}
