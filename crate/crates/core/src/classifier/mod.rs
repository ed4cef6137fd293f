//! Training-free nearest-prototype classification over extracted features.

pub mod metrics;
pub mod normalize;
pub mod pipeline;
pub mod prototype;
pub mod split;

pub use crate::features::{FeatureKind, FeatureVector};
pub use metrics::{class_scores, confusion_matrix, macro_f1, ClassScore};
pub use normalize::{FitScope, NormalizationStats};
pub use pipeline::{
    chaosnet_grid_pipeline, chaosnet_pipeline, evaluate, run_pipeline, ModelId, PipelineConfig,
};
pub use prototype::{class_prototypes, cosine_similarity, predict, ClassPrototype, DecisionRule};
pub use split::{stratified_split, Split, DEFAULT_SEED, DEFAULT_TRAIN_FRACTION};

use crate::error::Result;
use crate::features::Autochaos;

/// Maps one normalized sample to a feature vector.
///
/// Implementations are pure in the sample so rows can be extracted in any
/// order or in parallel.
pub trait Extractor: Sync {
    fn extract(&self, sample: &[f64]) -> Result<FeatureVector>;
}

impl Extractor for Autochaos<'_> {
    fn extract(&self, sample: &[f64]) -> Result<FeatureVector> {
        Autochaos::extract(self, sample)
    }
}
