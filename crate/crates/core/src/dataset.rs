//! Benchmark dataset manifests and CSV ingestion.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, IngestError, Result};

/// Environment variable naming the directory that holds the raw files.
pub const DATA_DIR_ENV: &str = "AUTOCHAOS_DATA_DIR";

const BUILTIN_MANIFESTS: &str = include_str!("../manifests.toml");

/// A labelled numeric table: `m` rows of `n` features, labels in `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub id: String,
    pub samples: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub class_names: Vec<String>,
    pub feature_names: Vec<String>,
}

impl Dataset {
    /// Checks shape consistency: equal row widths, labels in range.
    pub fn new(
        id: impl Into<String>,
        samples: Vec<Vec<f64>>,
        labels: Vec<usize>,
        class_names: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let id = id.into();
        if samples.len() != labels.len() {
            return Err(Error::LengthMismatch {
                predicted: samples.len(),
                actual: labels.len(),
            });
        }
        let n = feature_names.len();
        if let Some(row) = samples.iter().find(|r| r.len() != n) {
            return Err(Error::Width {
                expected: n,
                found: row.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::Config(format!(
                "{id}: label {bad} outside {} classes",
                class_names.len()
            )));
        }
        if samples.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Config(format!("{id}: non-finite feature value")));
        }
        Ok(Self {
            id,
            samples,
            labels,
            class_names,
            feature_names,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }
}

/// Column addressed by zero-based index or by header name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "{i}"),
            ColumnRef::Name(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedShape {
    pub features: usize,
    pub classes: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub raw: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub id: String,
    pub name: String,
    pub file: PathBuf,
    #[serde(default = "default_delimiter")]
    pub delimiter: String,
    #[serde(default)]
    pub header: bool,
    pub label_column: ColumnRef,
    #[serde(default)]
    pub drop_columns: Vec<ColumnRef>,
    #[serde(default)]
    pub missing_values: Vec<String>,
    #[serde(default)]
    pub drop_incomplete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature_names: Option<Vec<String>>,
    pub expected: ExpectedShape,
    pub classes: Vec<ClassSpec>,
}

fn default_delimiter() -> String {
    ",".to_string()
}

#[derive(Debug, Deserialize, Serialize)]
struct ManifestFile {
    dataset: Vec<DatasetManifest>,
}

/// Parse a manifest document holding one `[[dataset]]` table per entry.
pub fn parse_manifests(text: &str) -> Result<Vec<DatasetManifest>> {
    let file: ManifestFile =
        toml::from_str(text).map_err(|e| IngestError::Manifest(e.to_string()))?;
    Ok(file.dataset)
}

pub fn read_manifests(path: &Path) -> Result<Vec<DatasetManifest>> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_manifests(&text)
}

/// Manifests for the ten benchmark datasets.
pub fn builtin_manifests() -> Vec<DatasetManifest> {
    parse_manifests(BUILTIN_MANIFESTS).expect("built-in manifests parse")
}

pub fn find_manifest<'a>(
    manifests: &'a [DatasetManifest],
    id: &str,
) -> Option<&'a DatasetManifest> {
    manifests.iter().find(|m| m.id == id)
}

pub fn lookup(id: &str) -> Option<DatasetManifest> {
    builtin_manifests().into_iter().find(|m| m.id == id)
}

/// `$AUTOCHAOS_DATA_DIR`, falling back to `./data`.
pub fn default_data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

impl DatasetManifest {
    pub fn resolve_path(&self, data_dir: &Path) -> PathBuf {
        if self.file.is_absolute() {
            self.file.clone()
        } else {
            data_dir.join(&self.file)
        }
    }

    fn index_of(&self, col: &ColumnRef, header: Option<&[String]>, width: usize) -> Result<usize> {
        let unknown = || IngestError::UnknownColumn {
            dataset: self.id.clone(),
            column: col.to_string(),
        };
        let idx = match col {
            ColumnRef::Index(i) => *i,
            ColumnRef::Name(name) => header
                .and_then(|h| h.iter().position(|c| c == name))
                .ok_or_else(unknown)?,
        };
        if idx < width {
            Ok(idx)
        } else {
            Err(unknown().into())
        }
    }

    fn is_missing(&self, cell: &str) -> bool {
        cell.is_empty() || self.missing_values.iter().any(|m| m == cell)
    }
}

fn read_records(manifest: &DatasetManifest, path: &Path, text: &str) -> Result<Vec<Vec<String>>> {
    if manifest.delimiter == "whitespace" {
        return Ok(text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect());
    }
    let delim = match manifest.delimiter.as_bytes() {
        [b] => *b,
        _ => {
            return Err(IngestError::Manifest(format!(
                "{}: delimiter {:?} must be one byte or \"whitespace\"",
                manifest.id, manifest.delimiter
            ))
            .into())
        }
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .records()
        .map(|rec| {
            rec.map(|r| r.iter().map(str::to_string).collect())
                .map_err(|e| {
                    IngestError::Csv {
                        path: path.to_path_buf(),
                        message: e.to_string(),
                    }
                    .into()
                })
        })
        .collect()
}

/// Load and validate one dataset. Row `i` of the file (after any header
/// and dropped incomplete rows) becomes sample `i`.
pub fn load(manifest: &DatasetManifest, data_dir: &Path) -> Result<Dataset> {
    let path = manifest.resolve_path(data_dir);
    let text = fs::read_to_string(&path).map_err(|source| IngestError::Io {
        path: path.clone(),
        source,
    })?;
    let records = read_records(manifest, &path, &text)?;
    let id = manifest.id.as_str();

    let mut rows = records.into_iter().enumerate();
    let header: Option<Vec<String>> = if manifest.header {
        rows.next().map(|(_, h)| h)
    } else {
        None
    };
    let mut rows = rows.peekable();
    let width = match (&header, rows.peek()) {
        (Some(h), _) => h.len(),
        (None, Some((_, first))) => first.len(),
        (None, None) => 0,
    };

    let label_col = manifest.index_of(&manifest.label_column, header.as_deref(), width)?;
    let mut dropped = vec![false; width];
    dropped[label_col] = true;
    for col in &manifest.drop_columns {
        dropped[manifest.index_of(col, header.as_deref(), width)?] = true;
    }
    let feature_cols: Vec<usize> = (0..width).filter(|&c| !dropped[c]).collect();
    let column_name = |c: usize| match &header {
        Some(h) => h[c].clone(),
        None => c.to_string(),
    };

    let label_index: HashMap<&str, usize> = manifest
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.raw.as_str(), i))
        .collect();

    let mut samples = Vec::new();
    let mut labels = Vec::new();
    for (i, cells) in rows {
        let row = i + 1;
        if cells.len() != width {
            return Err(IngestError::ColumnCount {
                dataset: id.to_string(),
                row,
                expected: width,
                found: cells.len(),
            }
            .into());
        }
        let missing = std::iter::once(label_col)
            .chain(feature_cols.iter().copied())
            .find(|&c| manifest.is_missing(&cells[c]));
        if let Some(c) = missing {
            if manifest.drop_incomplete {
                continue;
            }
            return Err(IngestError::MissingValue {
                dataset: id.to_string(),
                row,
                column: column_name(c),
            }
            .into());
        }
        let raw_label = cells[label_col].as_str();
        let label = *label_index
            .get(raw_label)
            .ok_or_else(|| IngestError::UnknownLabel {
                dataset: id.to_string(),
                row,
                value: raw_label.to_string(),
            })?;
        let mut sample = Vec::with_capacity(feature_cols.len());
        for &c in &feature_cols {
            let cell = &cells[c];
            let value = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IngestError::NonNumeric {
                    dataset: id.to_string(),
                    row,
                    column: column_name(c),
                    value: cell.clone(),
                })?;
            sample.push(value);
        }
        samples.push(sample);
        labels.push(label);
    }

    let feature_names = match &manifest.feature_names {
        Some(names) => {
            if names.len() != feature_cols.len() {
                return Err(IngestError::Shape {
                    dataset: id.to_string(),
                    what: "feature names",
                    expected: feature_cols.len(),
                    found: names.len(),
                }
                .into());
            }
            names.clone()
        }
        None => feature_cols
            .iter()
            .map(|&c| match &header {
                Some(h) => h[c].clone(),
                None => format!("x{}", c + 1),
            })
            .collect(),
    };
    let class_names = manifest.classes.iter().map(|c| c.name.clone()).collect();
    let dataset = Dataset::new(id, samples, labels, class_names, feature_names)?;
    validate(manifest, &dataset)?;
    Ok(dataset)
}

/// Compare a loaded dataset against the manifest's expected shape and
/// per-class counts.
pub fn validate(manifest: &DatasetManifest, data: &Dataset) -> Result<()> {
    let shape = |what, expected, found| -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(IngestError::Shape {
                dataset: manifest.id.clone(),
                what,
                expected,
                found,
            }
            .into())
        }
    };
    shape("features", manifest.expected.features, data.n_features())?;
    shape("classes", manifest.expected.classes, data.n_classes())?;
    shape("samples", manifest.expected.samples, data.len())?;
    for (spec, found) in manifest.classes.iter().zip(data.class_counts()) {
        if let Some(expected) = spec.count {
            if expected != found {
                return Err(IngestError::ClassCount {
                    dataset: manifest.id.clone(),
                    class: spec.name.clone(),
                    expected,
                    found,
                }
                .into());
            }
        }
    }
    Ok(())
}
