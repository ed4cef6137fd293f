//! Training-free classification from chaotic traces of the decimal shift
//! map, driven by the digits of a truncated Champernowne constant.
//!
//! Each normalized feature value selects how long a trace of the shared
//! orbit to read; the trace mean (and optionally its firing rate) becomes
//! the chaotic feature. Classification is nearest class-mean prototype by
//! cosine similarity. A skew-tent-map ChaosNet comparator shares the same
//! pipeline.

pub mod bench;
pub mod champernowne;
pub mod chaosnet;
pub mod classifier;
pub mod dataset;
pub mod error;
pub mod features;
pub mod report;

pub use champernowne::{position_of, ChampernowneSource, Orbit};
pub use classifier::{Extractor, ModelId, PipelineConfig};
pub use dataset::{Dataset, DatasetManifest};
pub use error::{Error, IngestError, Result};
pub use features::{Autochaos, FeatureSet, TraceMode};
pub use report::{BenchReport, EvalReport, Format};
