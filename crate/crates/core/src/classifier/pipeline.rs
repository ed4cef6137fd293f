//! End-to-end evaluation: split, normalize, extract, fit prototypes, score.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{class_scores, confusion_matrix, macro_f1};
use super::normalize::{FitScope, NormalizationStats};
use super::prototype::{class_prototypes, predict, ClassPrototype, DecisionRule};
use super::split::{stratified_split, Split, DEFAULT_SEED, DEFAULT_TRAIN_FRACTION};
use super::Extractor;
use crate::chaosnet::{ChaosNetConfig, ChaosNetExtractor, Grid};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::features::{Autochaos, FeatureSet, TraceMode};
use crate::report::{ChaosNetSummary, ClassReport, EvalReport, RunConfig};

/// Model evaluated by the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Tm,
    Tmfr,
    #[serde(rename = "chaosnet")]
    ChaosNet,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::Tm, ModelId::Tmfr, ModelId::ChaosNet];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Tm => "tm",
            ModelId::Tmfr => "tmfr",
            ModelId::ChaosNet => "chaosnet",
        }
    }

    /// Feature set of the chaotic-trace models; `None` for ChaosNet.
    pub fn feature_set(self) -> Option<FeatureSet> {
        match self {
            ModelId::Tm => Some(FeatureSet::TraceMean),
            ModelId::Tmfr => Some(FeatureSet::TraceMeanFiringRate),
            ModelId::ChaosNet => None,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tm" => Ok(ModelId::Tm),
            "tmfr" | "tm-fr" => Ok(ModelId::Tmfr),
            "chaosnet" => Ok(ModelId::ChaosNet),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected tm, tmfr or chaosnet)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    pub train_fraction: f64,
    pub mode: TraceMode,
    pub rule: DecisionRule,
    pub scope: FitScope,
    /// Extract rows (and grid configurations) on the rayon pool. Results
    /// are identical either way.
    pub parallel: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            train_fraction: DEFAULT_TRAIN_FRACTION,
            mode: TraceMode::default(),
            rule: DecisionRule::default(),
            scope: FitScope::default(),
            parallel: false,
        }
    }
}

impl PipelineConfig {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            train_fraction: self.train_fraction,
            mode: self.mode,
            rule: self.rule,
            scope: self.scope,
        }
    }
}

/// Split and raw normalization shared by every model on one dataset.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub split: Split,
    pub raw_stats: NormalizationStats,
    /// Every row of the dataset, normalized to `[0, 1]`.
    pub rows: Vec<Vec<f64>>,
}

pub fn prepare(data: &Dataset, cfg: &PipelineConfig) -> Result<Prepared> {
    let split = stratified_split(&data.labels, data.n_classes(), cfg.train_fraction, cfg.seed)?;
    let raw_stats = match cfg.scope {
        FitScope::Full => NormalizationStats::fit(&data.samples, FitScope::Full)?,
        FitScope::Train => {
            let train: Vec<&[f64]> = split.train.iter().map(|&i| &data.samples[i][..]).collect();
            NormalizationStats::fit(&train, FitScope::Train)?
        }
    };
    let rows = raw_stats.apply_all(&data.samples)?;
    Ok(Prepared {
        split,
        raw_stats,
        rows,
    })
}

/// Features of every row, in row order.
pub fn extract_all<E: Extractor + ?Sized>(
    extractor: &E,
    rows: &[Vec<f64>],
    parallel: bool,
) -> Result<Vec<Vec<f64>>> {
    if parallel {
        rows.par_iter()
            .map(|r| extractor.extract(r).map(|v| v.values))
            .collect()
    } else {
        rows.iter()
            .map(|r| extractor.extract(r).map(|v| v.values))
            .collect()
    }
}

/// Prototypes fitted on the training rows of a feature table.
#[derive(Debug, Clone)]
pub struct FittedModel {
    pub feature_stats: NormalizationStats,
    pub prototypes: Vec<ClassPrototype>,
    pub rule: DecisionRule,
}

impl FittedModel {
    pub fn fit(
        features: &[Vec<f64>],
        labels: &[usize],
        train: &[usize],
        classes: usize,
        rule: DecisionRule,
    ) -> Result<Self> {
        let rows: Vec<&[f64]> = train.iter().map(|&i| &features[i][..]).collect();
        let feature_stats = NormalizationStats::fit(&rows, FitScope::Train)?;
        let normalized = feature_stats.apply_all(&rows)?;
        let train_labels: Vec<usize> = train.iter().map(|&i| labels[i]).collect();
        let prototypes = class_prototypes(&normalized, &train_labels, classes)?;
        Ok(Self {
            feature_stats,
            prototypes,
            rule,
        })
    }

    pub fn predict(&self, feature: &[f64]) -> Result<usize> {
        let x = self.feature_stats.apply(feature)?;
        Ok(predict(&self.prototypes, &x, self.rule))
    }

    pub fn predict_rows(&self, features: &[Vec<f64>], rows: &[usize]) -> Result<Vec<usize>> {
        rows.iter().map(|&i| self.predict(&features[i])).collect()
    }
}

fn build_report(
    data: &Dataset,
    model: ModelId,
    cfg: &PipelineConfig,
    prepared: Prepared,
    features: &[Vec<f64>],
    fitted: FittedModel,
) -> Result<EvalReport> {
    let test = &prepared.split.test;
    let predicted = fitted.predict_rows(features, test)?;
    let actual: Vec<usize> = test.iter().map(|&i| data.labels[i]).collect();
    let f1 = macro_f1(&predicted, &actual)?;
    let classes = class_scores(&predicted, &actual)?
        .into_iter()
        .map(|s| ClassReport {
            name: data.class_names[s.class].clone(),
            class: s.class,
            precision: s.precision,
            recall: s.recall,
            f1: s.f1,
            support: s.support,
        })
        .collect();
    let mut notes = Vec::new();
    if cfg.rule == DecisionRule::Min {
        notes.push("decision rule `min` picks the least similar prototype".to_string());
    }
    Ok(EvalReport {
        dataset: data.id.clone(),
        model,
        macro_f1: f1,
        config: cfg.run_config(),
        train_rows: prepared.split.train.len(),
        test_rows: test.len(),
        classes,
        confusion: confusion_matrix(&predicted, &actual, data.n_classes())?,
        raw_normalization: prepared.raw_stats,
        feature_normalization: fitted.feature_stats,
        prototypes: fitted.prototypes,
        chaosnet: None,
        notes,
    })
}

/// TM or TM-FR evaluation with the configured split and trace mode.
pub fn run_pipeline(
    data: &Dataset,
    features: FeatureSet,
    cfg: &PipelineConfig,
) -> Result<EvalReport> {
    let prepared = prepare(data, cfg)?;
    let extractor = Autochaos::new(features, cfg.mode);
    let table = extract_all(&extractor, &prepared.rows, cfg.parallel)?;
    let fitted = FittedModel::fit(
        &table,
        &data.labels,
        &prepared.split.train,
        data.n_classes(),
        cfg.rule,
    )?;
    let model = match features {
        FeatureSet::TraceMean => ModelId::Tm,
        FeatureSet::TraceMeanFiringRate => ModelId::Tmfr,
    };
    build_report(data, model, cfg, prepared, &table, fitted)
}

fn chaosnet_report(
    data: &Dataset,
    cfg: &PipelineConfig,
    prepared: Prepared,
    chaos: &ChaosNetConfig,
    grid_size: usize,
) -> Result<EvalReport> {
    let extractor = ChaosNetExtractor::new(*chaos);
    let table = extract_all(&extractor, &prepared.rows, cfg.parallel)?;
    let train = &prepared.split.train;
    let fitted = FittedModel::fit(&table, &data.labels, train, data.n_classes(), cfg.rule)?;
    let train_pred = fitted.predict_rows(&table, train)?;
    let train_actual: Vec<usize> = train.iter().map(|&i| data.labels[i]).collect();
    let train_f1 = macro_f1(&train_pred, &train_actual)?;
    let cap_hits = extractor.cap_hits();
    let mut report = build_report(data, ModelId::ChaosNet, cfg, prepared, &table, fitted)?;
    if cap_hits > 0 {
        report.notes.push(format!(
            "{cap_hits} neuron traces stopped at the cap of {} steps",
            chaos.cap
        ));
    }
    report.chaosnet = Some(ChaosNetSummary {
        config: *chaos,
        grid_size,
        train_macro_f1: train_f1,
        cap_hits,
    });
    Ok(report)
}

/// ChaosNet evaluation at one fixed hyperparameter setting.
pub fn chaosnet_pipeline(
    data: &Dataset,
    chaos: &ChaosNetConfig,
    cfg: &PipelineConfig,
) -> Result<EvalReport> {
    chaos.validate()?;
    let prepared = prepare(data, cfg)?;
    chaosnet_report(data, cfg, prepared, chaos, 1)
}

/// Training-set macro F1 of one ChaosNet configuration.
fn train_score(
    data: &Dataset,
    prepared: &Prepared,
    chaos: &ChaosNetConfig,
    rule: DecisionRule,
) -> Result<f64> {
    let extractor = ChaosNetExtractor::new(*chaos);
    let train = &prepared.split.train;
    let rows: Vec<Vec<f64>> = train.iter().map(|&i| prepared.rows[i].clone()).collect();
    let table = extract_all(&extractor, &rows, false)?;
    let local: Vec<usize> = (0..train.len()).collect();
    let labels: Vec<usize> = train.iter().map(|&i| data.labels[i]).collect();
    let fitted = FittedModel::fit(&table, &labels, &local, data.n_classes(), rule)?;
    let predicted = fitted.predict_rows(&table, &local)?;
    macro_f1(&predicted, &labels)
}

/// ChaosNet with hyperparameters chosen on the training rows only: every
/// grid configuration is scored by training-set macro F1 and the first
/// best one is evaluated on the test rows.
pub fn chaosnet_grid_pipeline(
    data: &Dataset,
    grid: &Grid,
    cfg: &PipelineConfig,
) -> Result<EvalReport> {
    let configs = grid.configs()?;
    let prepared = prepare(data, cfg)?;
    let scores: Vec<f64> = if cfg.parallel {
        configs
            .par_iter()
            .map(|c| train_score(data, &prepared, c, cfg.rule))
            .collect::<Result<_>>()?
    } else {
        configs
            .iter()
            .map(|c| train_score(data, &prepared, c, cfg.rule))
            .collect::<Result<_>>()?
    };
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    chaosnet_report(data, cfg, prepared, &configs[best], configs.len())
}

/// Runs `model` on `data`; ChaosNet searches `grid`.
pub fn evaluate(
    data: &Dataset,
    model: ModelId,
    cfg: &PipelineConfig,
    grid: &Grid,
) -> Result<EvalReport> {
    match model.feature_set() {
        Some(features) => run_pipeline(data, features, cfg),
        None => chaosnet_grid_pipeline(data, grid, cfg),
    }
}
