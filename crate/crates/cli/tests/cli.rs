use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn autochaos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autochaos"))
        .env("AUTOCHAOS_DATA_DIR", data_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

fn tiny(args: &[&str]) -> Output {
    let manifest = fixtures().join("tiny.toml");
    let dir = fixtures();
    let mut all = vec![
        "--manifest",
        manifest.to_str().unwrap(),
        "--data-dir",
        dir.to_str().unwrap(),
    ];
    all.extend_from_slice(args);
    autochaos(&all)
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn digits_prints_slices() {
    assert_eq!(
        stdout(&autochaos(&["digits", "--offset", "0", "--count", "15"])),
        "123456789101112\n"
    );
    assert_eq!(
        stdout(&autochaos(&["digits", "--offset", "1386", "--count", "3"])),
        "499\n"
    );
}

#[test]
fn digits_out_of_range_names_the_bound() {
    let o = autochaos(&["digits", "--offset", "1380", "--count", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1389"));
}

#[test]
fn extract_iris_shapes() {
    for (model, width) in [("tm", 5), ("tmfr", 9)] {
        let text = stdout(&autochaos(&[
            "extract",
            "--dataset",
            "iris",
            "--model",
            model,
        ]));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 151, "{model}");
        assert!(lines[0].starts_with("label,mean_1"));
        assert!(lines.iter().all(|l| l.split(',').count() == width));
    }
}

#[test]
fn extract_rejects_chaosnet() {
    let o = autochaos(&["extract", "--dataset", "iris", "--model", "chaosnet"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_input_leaves_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("features.csv");
    let o = tiny(&[
        "extract",
        "--dataset",
        "absent",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unknown_dataset_is_an_ingest_failure() {
    let o = autochaos(&["eval", "--dataset", "nope"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_flag_values_are_config_failures() {
    assert_eq!(
        autochaos(&["eval", "--dataset", "iris", "--rule", "median"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        autochaos(&["eval", "--dataset", "iris", "--split", "1.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn eval_is_byte_identical_across_runs() {
    for format in ["table", "toml", "csv", "json-lines"] {
        let args = [
            "eval",
            "--dataset",
            "seeds",
            "--model",
            "tmfr",
            "--format",
            format,
        ];
        assert_eq!(
            stdout(&autochaos(&args)),
            stdout(&autochaos(&args)),
            "{format}"
        );
    }
}

#[test]
fn eval_matches_golden_report() {
    let golden = std::fs::read_to_string(fixtures().join("tiny_eval.csv")).unwrap();
    assert_eq!(
        stdout(&tiny(&["eval", "--dataset", "tiny", "--format", "csv"])),
        golden
    );
}

#[test]
fn extract_matches_golden_features() {
    let golden = std::fs::read_to_string(fixtures().join("tiny_tmfr.csv")).unwrap();
    assert_eq!(
        stdout(&tiny(&["extract", "--dataset", "tiny", "--model", "tmfr"])),
        golden
    );
}

#[test]
fn eval_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.toml");
    let o = tiny(&[
        "eval",
        "--dataset",
        "tiny",
        "--format",
        "toml",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("macro_f1 = 1.0"));
    assert!(text.contains("[[prototypes]]"));
}

#[test]
fn bench_single_iteration_has_zero_spread() {
    let text = stdout(&tiny(&[
        "bench",
        "--datasets",
        "tiny",
        "--models",
        "tm",
        "--iterations",
        "1",
        "--format",
        "csv",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("dataset,model,iterations,mean_seconds,std_seconds,macro_f1"));
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[2], "1");
    assert_eq!(cells[4], "0");
}

#[test]
fn bench_has_one_row_per_cell() {
    let grid = fixtures().join("small_grid.toml");
    let text = stdout(&autochaos(&[
        "bench",
        "--datasets",
        "iris,seeds,wine,penguin",
        "--models",
        "tmfr,chaosnet",
        "--iterations",
        "2",
        "--grid",
        grid.to_str().unwrap(),
        "--format",
        "json-lines",
    ]));
    assert_eq!(text.lines().count(), 8);
    assert!(text
        .lines()
        .all(|l| l.starts_with('{') && l.contains("\"std_seconds\"")));
}

#[test]
fn bench_continues_past_failed_cells() {
    let o = tiny(&[
        "bench",
        "--datasets",
        "absent,tiny",
        "--models",
        "tm",
        "--iterations",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("tiny,tm,"));
}

#[test]
fn manifests_lists_builtin_ids() {
    let text = stdout(&autochaos(&["manifests"]));
    for id in [
        "iris",
        "haberman",
        "seeds",
        "statlog",
        "ionosphere",
        "banknote",
        "breast-cancer",
        "wine",
        "penguin",
        "sonar",
    ] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
}
