use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use autochaos::champernowne::ChampernowneSource;
use autochaos::chaosnet::Grid;
use autochaos::classifier::pipeline::extract_all;
use autochaos::classifier::{
    evaluate, DecisionRule, FitScope, ModelId, NormalizationStats, PipelineConfig,
};
use autochaos::dataset::{self, Dataset, DatasetManifest};
use autochaos::report::{render_bench, Format};
use autochaos::{bench, Autochaos, Error, FeatureSet, IngestError, TraceMode};
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 2;
const EXIT_INGEST: u8 = 3;
const EXIT_RUNTIME: u8 = 4;

/// Training-free chaotic-feature classifier and benchmark runner.
#[derive(Debug, Parser)]
#[command(name = "autochaos", version)]
struct Cli {
    /// Directory holding the dataset files [env: AUTOCHAOS_DATA_DIR, default: ./data]
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,

    /// Manifest file replacing the built-in dataset definitions.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print digits of the truncated Champernowne source.
    Digits {
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long, default_value_t = 15)]
        count: usize,
    },
    /// Write chaotic features of every row of a dataset as CSV.
    Extract {
        #[arg(long)]
        dataset: String,
        /// tm or tmfr
        #[arg(long, default_value = "tmfr")]
        model: ModelId,
        /// bound, clamped or match
        #[arg(long, default_value = "bound")]
        mode: TraceMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one model on one dataset.
    Eval {
        #[arg(long)]
        dataset: String,
        /// tm, tmfr or chaosnet
        #[arg(long, default_value = "tmfr")]
        model: ModelId,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time repeated evaluations over datasets and models.
    Bench {
        /// Comma-separated dataset ids; all built-in ids when omitted.
        #[arg(long, value_delimiter = ',')]
        datasets: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "tm,tmfr,chaosnet")]
        models: Vec<ModelId>,
        /// Timed runs per TM / TM-FR cell.
        #[arg(long, default_value_t = 50)]
        iterations: usize,
        /// Timed runs per ChaosNet cell, each a full grid search.
        #[arg(long, default_value_t = 1)]
        chaosnet_iterations: usize,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the datasets the current manifest defines.
    Manifests,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fraction of each class used for training.
    #[arg(long, default_value_t = 0.8)]
    split: f64,
    /// max or min
    #[arg(long, default_value = "max")]
    rule: DecisionRule,
    /// Raw normalization fitted on the full dataset or the training rows.
    #[arg(long, default_value = "full")]
    scope: FitScope,
    #[arg(long, default_value = "bound")]
    mode: TraceMode,
    /// Extract on all cores.
    #[arg(long)]
    parallel: bool,
    /// TOML file with the ChaosNet grid (`initial`, `skew`, `noise`, `cap`).
    #[arg(long)]
    grid: Option<PathBuf>,
}

impl RunArgs {
    fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            seed: self.seed,
            train_fraction: self.split,
            mode: self.mode,
            rule: self.rule,
            scope: self.scope,
            parallel: self.parallel,
        }
    }

    fn grid(&self) -> Result<Grid, Failure> {
        let Some(path) = &self.grid else {
            return Ok(Grid::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Ingest(_) => EXIT_INGEST,
            Error::Config(_) | Error::InvalidWindow(_) | Error::DigitRange { .. } => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

struct Context {
    data_dir: PathBuf,
    manifests: Vec<DatasetManifest>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let manifests = match &cli.manifest {
            Some(path) => dataset::read_manifests(path)?,
            None => dataset::builtin_manifests(),
        };
        Ok(Self {
            data_dir: cli
                .data_dir
                .clone()
                .unwrap_or_else(dataset::default_data_dir),
            manifests,
        })
    }

    fn load(&self, id: &str) -> Result<Dataset, Failure> {
        let manifest = dataset::find_manifest(&self.manifests, id)
            .ok_or_else(|| Error::from(IngestError::UnknownDataset(id.to_string())))?;
        Ok(dataset::load(manifest, &self.data_dir)?)
    }
}

/// Writes `text` to `out`, or stdout. A file only appears once complete.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::runtime(format!("stdout: {e}")));
    };
    let fail = |e: std::io::Error| Failure::runtime(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// Shortest decimal that round-trips `v` rounded to 15 significant digits.
fn sig15(v: f64) -> String {
    let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    rounded.to_string()
}

fn extract_csv(data: &Dataset, features: FeatureSet, mode: TraceMode) -> Result<String, Failure> {
    let stats = NormalizationStats::fit(&data.samples, FitScope::Full)?;
    let rows = stats.apply_all(&data.samples)?;
    let table = extract_all(&Autochaos::new(features, mode), &rows, false)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::runtime(format!("csv output: {e}"));
    let mut header = vec!["label".to_string()];
    header.extend(features.column_names(data.n_features()));
    w.write_record(&header).map_err(csv_err)?;
    for (row, &label) in table.iter().zip(&data.labels) {
        let mut rec = vec![data.class_names[label].clone()];
        rec.extend(row.iter().map(|&v| sig15(v)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::runtime(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Digits { offset, count } => {
            let text = ChampernowneSource::shared().slice_text(*offset, *count)?;
            println!("{text}");
            Ok(())
        }
        Command::Manifests => {
            let ctx = Context::new(&cli)?;
            let mut text = String::new();
            for m in &ctx.manifests {
                text.push_str(&format!(
                    "{:<14} {:<28} n={:<3} k={} m={:<5} {}\n",
                    m.id,
                    m.name,
                    m.expected.features,
                    m.expected.classes,
                    m.expected.samples,
                    m.resolve_path(&ctx.data_dir).display()
                ));
            }
            emit(None, &text)
        }
        Command::Extract {
            dataset,
            model,
            mode,
            out,
        } => {
            let features = model
                .feature_set()
                .ok_or_else(|| Failure::config("extract supports the tm and tmfr models only"))?;
            let ctx = Context::new(&cli)?;
            let data = ctx.load(dataset)?;
            let text = extract_csv(&data, features, *mode)?;
            emit(out.as_deref(), &text)
        }
        Command::Eval {
            dataset,
            model,
            run,
            format,
            out,
        } => {
            let grid = run.grid()?;
            let ctx = Context::new(&cli)?;
            let data = ctx.load(dataset)?;
            let report = evaluate(&data, *model, &run.pipeline(), &grid)?;
            emit(out.as_deref(), &report.render(*format)?)
        }
        Command::Bench {
            datasets,
            models,
            iterations,
            chaosnet_iterations,
            run,
            format,
            out,
        } => {
            let grid = run.grid()?;
            let cfg = run.pipeline();
            let ctx = Context::new(&cli)?;
            let ids: Vec<String> = if datasets.is_empty() {
                ctx.manifests.iter().map(|m| m.id.clone()).collect()
            } else {
                datasets.clone()
            };
            let mut reports = Vec::new();
            let mut first_failure: Option<Failure> = None;
            let mut record = |f: Failure, what: &str| {
                eprintln!("autochaos: {what}: {}", f.message);
                first_failure.get_or_insert(f);
            };
            for id in &ids {
                let data = match ctx.load(id) {
                    Ok(d) => d,
                    Err(f) => {
                        record(f, id);
                        continue;
                    }
                };
                for &model in models {
                    let n = if model == ModelId::ChaosNet {
                        *chaosnet_iterations
                    } else {
                        *iterations
                    };
                    match bench::bench_cell(&data, model, &cfg, &grid, n) {
                        Ok(r) => reports.push(r),
                        Err(e) => record(e.into(), &format!("{id}/{model}")),
                    }
                }
            }
            emit(out.as_deref(), &render_bench(&reports, *format)?)?;
            match first_failure {
                Some(f) => Err(Failure {
                    code: f.code,
                    message: "one or more benchmark cells failed".into(),
                }),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("autochaos: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
