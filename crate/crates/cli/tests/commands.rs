use std::path::Path;
use std::process::Command;

use clap::Parser;
use humhash::corpus::RecordStore;
use humhash::{KeyboardLayout, PasswordOutput};
use humhash_cli::{run, Cli};

fn cli(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("humhash").chain(args.iter().copied())).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let mut out = Vec::new();
    run(cli(args), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_humhash"))
}

fn sample() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample_survey.csv").display().to_string()
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--scheme", "memory-palace", "--website", "gmail", "--seed", "7"];
    let first = run_ok(&args);
    assert!(!first.trim().is_empty());
    for _ in 0..5 {
        assert_eq!(run_ok(&args), first);
    }
    let other = run_ok(&["generate", "--scheme", "memory-palace", "--website", "gmail", "--seed", "8"]);
    assert_ne!(other, first);
}

#[test]
fn trace_output_replays() {
    for scheme in ["memory-palace", "scrambled-box", "song-password", "internal-sentence"] {
        let text = run_ok(&["generate", "--scheme", scheme, "--website", "amazon", "--seed", "3", "--trace"]);
        let output: PasswordOutput = serde_json::from_str(&text).unwrap();
        let plain = run_ok(&["generate", "--scheme", scheme, "--website", "amazon", "--seed", "3"]);
        assert_eq!(output.password, plain.trim_end_matches('\n'));
        let replayed = output.replay(&KeyboardLayout::qwerty()).unwrap();
        assert_eq!(replayed.password, output.password, "{scheme}");
    }
}

#[test]
fn unknown_scheme_is_a_usage_error() {
    let out = bin().args(["generate", "--scheme", "nope", "--website", "gmail"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scheme"));
}

#[test]
fn binary_generates() {
    let out = bin()
        .args(["generate", "--scheme", "song-password", "--website", "flipkart", "--seed", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!out.stdout.is_empty());
}

#[test]
fn config_conflict_fails_before_work() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"seed": 4, "users": 3}"#).unwrap();
    let results = dir.path().join("results");
    let out = bin()
        .args(["simulate", "--seed", "5", "--config"])
        .arg(&config)
        .arg("--results")
        .arg(&results)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
    assert!(!results.exists());

    std::fs::write(&config, r#"{"sead": 4}"#).unwrap();
    let out = bin().args(["simulate", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_writes_records_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"users": 6, "sites": 3}"#).unwrap();
    let results = dir.path().display().to_string();
    let config = config.display().to_string();
    run_ok(&["simulate", "--scheme", "internal-sentence", "--seed", "9", "--config", &config, "--results", &results]);
    let run_dir = dir.path().join("simulate/internal-sentence-seed9");
    let loaded = RecordStore::new(run_dir.join("records.jsonl")).load().unwrap();
    assert_eq!(loaded.records.len(), 18);
    assert!(loaded.errors.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(run_dir.join("collisions.json")).unwrap()).unwrap();
    assert_eq!(report["kind"], "collision");
    assert_eq!(report["seed"], 9);
    let run: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(run_dir.join("run.json")).unwrap()).unwrap();
    assert_eq!(run["seed"], 9);
    assert!(run_dir.join("collisions.csv").exists());
}

#[test]
fn analyze_summary_on_sample() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().display().to_string();
    let csv = sample();
    let printed = run_ok(&[
        "analyze", "--csv", &csv, "--id-column", "participant", "--website-column", "site", "--recalled-column",
        "recalled", "--difficulty-column", "difficulty", "--education-column", "education", "--summary", "--results",
        &results,
    ]);
    let summary = std::fs::read_to_string(dir.path().join("analyze/sample_survey/summary.csv")).unwrap();
    let mut lines = summary.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("scheme,count,mean_length"), "{header}");
    let schemes: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(schemes, ["internal-sentence", "memory-palace", "scrambled-box", "song-password"]);
    assert!(printed.contains("memory-palace,4,"));
    assert!(!dir.path().join("analyze/sample_survey/symbols.csv").exists());

    run_ok(&["analyze", "--csv", &csv, "--difficulty-column", "difficulty", "--education-column", "education", "--results", &results]);
    for f in ["summary.csv", "capitalization.csv", "symbols.csv", "degradation.csv"] {
        assert!(dir.path().join("analyze/sample_survey").join(f).exists(), "{f}");
    }
}

#[test]
fn attack_ufrca_reports_success_rate() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().display().to_string();
    let printed = run_ok(&[
        "attack", "--game", "ufrca", "--scheme", "internal-sentence", "--adversary", "dictionary", "--trials", "50",
        "--seed", "2", "--results", &results,
    ]);
    let report: serde_json::Value = serde_json::from_str(&printed).unwrap();
    assert_eq!(report["kind"], "ufrca");
    assert!(report["estimates"]["success_rate"].is_number());
    let path = dir.path().join("attack/ufrca-internal-sentence-dictionary_sentence-seed2/report.json");
    assert!(path.exists(), "{}", path.display());
}

#[test]
fn attack_small_games() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().display().to_string();
    let cue: serde_json::Value = serde_json::from_str(&run_ok(&[
        "attack", "--game", "cue", "--p", "1", "--n", "0", "--results", &results,
    ]))
    .unwrap();
    assert_eq!(cue["estimates"]["images"], 1.0);
    assert_eq!(cue["estimates"]["threshold"], 1.0);
    let pre: serde_json::Value =
        serde_json::from_str(&run_ok(&["attack", "--game", "preimage", "--results", &results])).unwrap();
    assert_eq!(pre["estimates"]["a_unordered"], 13.0);
    assert_eq!(pre["estimates"]["b_ordered"], 26.0);
    let av: serde_json::Value = serde_json::from_str(&run_ok(&[
        "attack", "--game", "avalanche", "--scheme", "memory-palace", "--users", "5", "--results", &results,
    ]))
    .unwrap();
    assert!(av["estimates"]["mean_similarity"].is_number());
}

#[test]
fn train_writes_checkpoint_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().display().to_string();
    let printed = run_ok(&[
        "train", "--scheme", "memory-palace", "--epochs", "3", "--hidden", "8", "--users", "5", "--sites", "4",
        "--results", &results,
    ]);
    let metrics: serde_json::Value = serde_json::from_str(&printed).unwrap();
    assert_eq!(metrics["passwords"], 20);
    let run_dir = dir.path().join("train/memory-palace-seed0");
    let curve = std::fs::read_to_string(run_dir.join("curve.csv")).unwrap();
    assert_eq!(curve.lines().count(), 4);
    let checkpoint: humhash::predictor::Checkpoint =
        serde_json::from_str(&std::fs::read_to_string(run_dir.join("checkpoint.json")).unwrap()).unwrap();
    assert_eq!(checkpoint.hidden, 8);
    assert!(humhash::Lstm::from_checkpoint(&checkpoint).is_ok());
}
