//! Subcommands. Each run writes into its own directory under `--results`:
//!
//! ```text
//! results/
//!   simulate/<scheme>-seed<N>/   records.jsonl, collisions.json, collisions.csv, run.json
//!   analyze/<input stem>/        summary.csv, capitalization.csv, symbols.csv, degradation.csv, run.json
//!   attack/<game>-<label>-seed<N>/  report.json, report.csv, run.json
//!   train/<scheme>-seed<N>/      checkpoint.json, curve.csv, metrics.json, run.json
//! ```

use std::fs::File;
use std::io::{BufWriter, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use humhash::corpus::{import_survey_csv, ColumnMapping, PasswordRecord, RecordStore};
use humhash::metrics::{
    capitalization_by_scheme, graceful_degradation_by_scheme, summarize, symbol_rank_frequency, write_matrix_csv,
    write_ranking_csv, write_summary_csv,
};
use humhash::predictor::{last_char_accuracy, ngram_baseline, train, write_curve_csv, TrainConfig};
use humhash::schemes::build_box;
use humhash::security::{
    avalanche_experiment, collision_experiment, cue_recovery_min_images, preimage_pair_count, simulate_records,
    ufrca_game, AdversaryId, Counting, ExperimentReport, Lab, DEFAULT_MAX_FPR, DEFAULT_MIN_TPR, LAB_BOX_SEED,
};
use humhash::{hash, MemoryModel, SchemeContext, SchemeId};

use crate::config::{pick, ConfigError, FileConfig};
use crate::server::{self, ServiceConfig};

pub const PORT_ENV: &str = "HUMHASH_PORT";
pub const DEFAULT_PORT: u16 = 8787;

#[derive(Debug, Parser)]
#[command(name = "humhash", version, about = "Human-computable password schemes: generate, simulate, analyze, attack, train, serve")]
pub struct Cli {
    /// Directory that run outputs are written under.
    #[arg(long, global = true, default_value = "results")]
    pub results: PathBuf,
    /// JSON file with default settings; flags that disagree with it are an error.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hash one website for one simulated person.
    Generate(GenerateArgs),
    /// Passwords for many simulated people, plus their collision rates.
    Simulate(SimulateArgs),
    /// Survey-style tables from a record file or CSV.
    Analyze(AnalyzeArgs),
    /// Run a security game or experiment.
    Attack(AttackArgs),
    /// Train the next-character predictor on one scheme's passwords.
    Train(TrainArgs),
    /// Serve the step-by-step session API on loopback.
    Serve(ServeArgs),
}

fn scheme_arg(s: &str) -> Result<SchemeId, String> {
    SchemeId::from_str(s)
}

fn adversary_arg(s: &str) -> Result<AdversaryId, String> {
    AdversaryId::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = scheme_arg)]
    pub scheme: SchemeId,
    #[arg(long)]
    pub website: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seed of the base character box used by scrambled-box.
    #[arg(long, default_value_t = LAB_BOX_SEED)]
    pub box_seed: u64,
    /// Print the full output with every intermediate value as JSON.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Default memory-palace.
    #[arg(long, value_parser = scheme_arg)]
    pub scheme: Option<SchemeId>,
    /// Default 50.
    #[arg(long)]
    pub users: Option<usize>,
    /// Websites per user, default 10.
    #[arg(long)]
    pub sites: Option<usize>,
    /// Master seed, default 0.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// JSON-lines record file.
    #[arg(long, conflicts_with = "csv", required_unless_present = "csv")]
    pub records: Option<PathBuf>,
    /// Survey CSV; columns are named with the --*-column flags.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value = "scheme")]
    pub scheme_column: String,
    #[arg(long, default_value = "password")]
    pub password_column: String,
    #[arg(long)]
    pub id_column: Option<String>,
    #[arg(long)]
    pub website_column: Option<String>,
    #[arg(long)]
    pub recalled_column: Option<String>,
    #[arg(long)]
    pub difficulty_column: Option<String>,
    #[arg(long)]
    pub education_column: Option<String>,
    /// Per-scheme counts, length, policy compliance, entropy and difficulty.
    #[arg(long)]
    pub summary: bool,
    /// Uppercase counts by character index.
    #[arg(long)]
    pub capitalization: bool,
    /// Symbol rank-frequency per scheme.
    #[arg(long)]
    pub symbols: bool,
    /// Difficulty slope against education level.
    #[arg(long)]
    pub degradation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Game {
    Ufrca,
    Collision,
    Avalanche,
    Preimage,
    Cue,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, value_enum)]
    pub game: Game,
    #[arg(long, value_parser = scheme_arg)]
    pub scheme: Option<SchemeId>,
    #[arg(long, value_parser = adversary_arg)]
    pub adversary: Option<AdversaryId>,
    /// UF-RCA trials, default 1000.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Passwords the adversary sees before forging, default 5.
    #[arg(long)]
    pub observed: Option<usize>,
    /// Simulated users for collision and avalanche, default 100.
    #[arg(long)]
    pub users: Option<usize>,
    /// Websites per user for the collision experiment, default 10.
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Owner's per-image recognition accuracy.
    #[arg(long, default_value_t = 0.9)]
    pub p: f64,
    /// Stranger's per-image recognition accuracy.
    #[arg(long, default_value_t = 0.5)]
    pub n: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_FPR)]
    pub max_fpr: f64,
    #[arg(long, default_value_t = DEFAULT_MIN_TPR)]
    pub min_tpr: f64,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, value_parser = scheme_arg)]
    pub scheme: Option<SchemeId>,
    /// Default 100.
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Hidden units, default 50.
    #[arg(long)]
    pub hidden: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Simulated users, default 50.
    #[arg(long)]
    pub users: Option<usize>,
    /// Websites per user, default 10.
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Train on the scheme's passwords from this record file instead of simulating.
    #[arg(long)]
    pub records: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    #[arg(long, env = PORT_ENV, default_value_t = DEFAULT_PORT)]
    pub port: u16,
    /// Seconds a session may sit idle before it expires.
    #[arg(long, default_value_t = 1800)]
    pub idle_timeout: u64,
    /// Record file that sessions created with `"persist": true` append to.
    #[arg(long)]
    pub persist: Option<PathBuf>,
    #[arg(long, default_value_t = LAB_BOX_SEED)]
    pub box_seed: u64,
}

/// Runs a parsed command, writing human-facing output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Generate(a) => generate(&a, out),
        Command::Simulate(a) => simulate(&a, &file, &cli.results, out),
        Command::Analyze(a) => analyze(&a, &cli.results, out),
        Command::Attack(a) => attack(&a, &file, &cli.results, out),
        Command::Train(a) => train_command(&a, &file, &cli.results, out),
        Command::Serve(a) => serve(&a, out),
    }
}

fn file_scheme(file: &FileConfig) -> Result<Option<SchemeId>, ConfigError> {
    file.scheme.as_deref().map(SchemeId::from_str).transpose().map_err(ConfigError)
}

fn file_adversary(file: &FileConfig) -> Result<Option<AdversaryId>, ConfigError> {
    file.adversary
        .as_deref()
        .map(AdversaryId::from_str)
        .transpose()
        .map_err(|e| ConfigError(e.to_string()))
}

fn run_dir(results: &Path, command: &str, label: &str) -> Result<PathBuf> {
    let dir = results.join(command).join(label);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

/// Records the command, master seed and parameters next to the outputs.
fn log_run(dir: &Path, command: &str, seed: Option<u64>, parameters: serde_json::Value) -> Result<()> {
    if let Some(seed) = seed {
        eprintln!("{command}: master seed {seed}");
    }
    write_json(
        &dir.join("run.json"),
        &json!({
            "command": command,
            "seed": seed,
            "parameters": parameters,
            "started_at": chrono::Utc::now().to_rfc3339(),
            "version": env!("CARGO_PKG_VERSION"),
        }),
    )
}

pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let person = MemoryModel::with_seed(args.seed);
    let context = SchemeContext::with_box(build_box(args.box_seed));
    let output = hash(args.scheme, &person, &args.website, &context)?;
    if args.trace {
        writeln!(out, "{}", serde_json::to_string_pretty(&output)?)?;
    } else {
        writeln!(out, "{}", output.password)?;
    }
    Ok(())
}

pub fn simulate(args: &SimulateArgs, file: &FileConfig, results: &Path, out: &mut dyn Write) -> Result<()> {
    let scheme = pick("scheme", args.scheme, file_scheme(file)?, SchemeId::MemoryPalace)?;
    let users = pick("users", args.users, file.users, 50)?;
    let sites = pick("sites", args.sites, file.sites, 10)?;
    let seed = pick("seed", args.seed, file.seed, 0)?;
    let lab = Lab::default();
    if sites == 0 || sites > lab.websites.len() {
        return Err(ConfigError(format!("--sites must be between 1 and {}", lab.websites.len())).into());
    }
    if users == 0 {
        return Err(ConfigError("--users must be at least 1".into()).into());
    }

    let dir = run_dir(results, "simulate", &format!("{scheme}-seed{seed}"))?;
    log_run(&dir, "simulate", Some(seed), json!({ "scheme": scheme, "users": users, "sites": sites }))?;
    let records = simulate_records(&lab, scheme, users, sites, seed)?;
    RecordStore::new(dir.join("records.jsonl")).save_all(&records)?;

    let collisions = collision_experiment(&lab, scheme, users, &lab.websites[..sites], seed)?;
    let report = collisions.to_report();
    write_json(&dir.join("collisions.json"), &report)?;
    report.write_csv(create(&dir.join("collisions.csv"))?)?;

    writeln!(out, "{} records in {}", records.len(), dir.display())?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

fn load_records(args: &AnalyzeArgs) -> Result<(Vec<PasswordRecord>, PathBuf)> {
    if let Some(path) = &args.records {
        let loaded = RecordStore::new(path).load()?;
        for e in &loaded.errors {
            eprintln!("{}: skipped {e}", path.display());
        }
        return Ok((loaded.records, path.clone()));
    }
    let path = args.csv.clone().expect("clap requires --records or --csv");
    let mapping = ColumnMapping {
        id: args.id_column.clone(),
        website: args.website_column.clone(),
        recalled: args.recalled_column.clone(),
        difficulty: args.difficulty_column.clone(),
        education_level: args.education_column.clone(),
        ..ColumnMapping::minimal(&args.scheme_column, &args.password_column)
    };
    let imported = import_survey_csv(File::open(&path).with_context(|| format!("opening {}", path.display()))?, &mapping)?;
    for d in &imported.rejected {
        eprintln!("{} row {}: rejected, {}", path.display(), d.row, d.message);
    }
    Ok((imported.records, path))
}

pub fn analyze(args: &AnalyzeArgs, results: &Path, out: &mut dyn Write) -> Result<()> {
    let (records, source) = load_records(args)?;
    if records.is_empty() {
        bail!("{} holds no usable records", source.display());
    }
    let all = !(args.summary || args.capitalization || args.symbols || args.degradation);
    let stem = source.file_stem().and_then(|s| s.to_str()).unwrap_or("records");
    let dir = run_dir(results, "analyze", stem)?;
    log_run(&dir, "analyze", None, json!({ "input": source, "records": records.len() }))?;

    if all || args.summary {
        let rows = summarize::<f64>(&records)?;
        write_summary_csv(&rows, create(&dir.join("summary.csv"))?)?;
        let mut buf = Vec::new();
        write_summary_csv(&rows, &mut buf)?;
        out.write_all(&buf)?;
    }
    if all || args.capitalization {
        write_matrix_csv(&capitalization_by_scheme(&records), create(&dir.join("capitalization.csv"))?)?;
    }
    if all || args.symbols {
        write_ranking_csv(&symbol_rank_frequency(&records), create(&dir.join("symbols.csv"))?)?;
    }
    if all || args.degradation {
        let mut w = csv::Writer::from_writer(create(&dir.join("degradation.csv"))?);
        w.write_record(["scheme", "slope"])?;
        for (scheme, slope) in graceful_degradation_by_scheme::<f64>(&records) {
            let value = slope.map(|s| s.to_string()).unwrap_or_else(|_| "NA".into());
            w.write_record([scheme, value])?;
        }
        w.flush()?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(())
}

pub fn attack(args: &AttackArgs, file: &FileConfig, results: &Path, out: &mut dyn Write) -> Result<()> {
    let scheme = pick("scheme", args.scheme, file_scheme(file)?, SchemeId::MemoryPalace)?;
    let adversary = pick(
        "adversary",
        args.adversary,
        file_adversary(file)?,
        AdversaryId::DictionarySentence,
    )?;
    let trials = pick("trials", args.trials, file.trials, 1000)?;
    let observed = pick("observed", args.observed, file.observed, 5)?;
    let users = pick("users", args.users, file.users, 100)?;
    let sites = pick("sites", args.sites, file.sites, 10)?;
    let seed = pick("seed", args.seed, file.seed, 0)?;
    let lab = Lab::default();

    let (label, parameters) = match args.game {
        Game::Ufrca => (
            format!("ufrca-{scheme}-{adversary}-seed{seed}"),
            json!({ "scheme": scheme, "adversary": adversary, "trials": trials, "observed": observed }),
        ),
        Game::Collision => (
            format!("collision-{scheme}-seed{seed}"),
            json!({ "scheme": scheme, "users": users, "sites": sites }),
        ),
        Game::Avalanche => (format!("avalanche-{scheme}-seed{seed}"), json!({ "scheme": scheme, "users": users })),
        Game::Preimage => ("preimage".to_string(), json!({})),
        Game::Cue => (
            format!("cue-p{}-n{}", args.p, args.n),
            json!({ "p": args.p, "n": args.n, "max_fpr": args.max_fpr, "min_tpr": args.min_tpr }),
        ),
    };
    if args.game == Game::Collision && (sites == 0 || sites > lab.websites.len()) {
        return Err(ConfigError(format!("--sites must be between 1 and {}", lab.websites.len())).into());
    }
    let dir = run_dir(results, "attack", &label)?;
    let seeded = matches!(args.game, Game::Ufrca | Game::Collision | Game::Avalanche);
    log_run(&dir, "attack", seeded.then_some(seed), parameters)?;

    let report = match args.game {
        Game::Ufrca => ufrca_game(&lab, scheme, adversary, observed, trials, seed)?.to_report(),
        Game::Collision => collision_experiment(&lab, scheme, users, &lab.websites[..sites], seed)?.to_report(),
        Game::Avalanche => {
            let pairs: Vec<(String, String)> = [("gmail", "gmall"), ("amazon", "amazom"), ("paypal", "paypai"), ("github", "gitlub")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            avalanche_experiment(&lab, scheme, &pairs, users, seed)?.to_report()
        }
        Game::Preimage => {
            let mut report = ExperimentReport::new("preimage", 0, json!({}));
            for l in 'a'..='z' {
                let ordered = preimage_pair_count(l, Counting::Ordered)?;
                let unordered = preimage_pair_count(l, Counting::Unordered)?;
                report = report
                    .estimate(&format!("{l}_ordered"), Some(ordered as f64))
                    .estimate(&format!("{l}_unordered"), Some(unordered as f64));
            }
            report.sample("pairs", 676)
        }
        Game::Cue => {
            let r = cue_recovery_min_images(args.p, args.n, args.max_fpr, args.min_tpr)?;
            ExperimentReport::new(
                "cue_recovery",
                0,
                json!({ "p": args.p, "n": args.n, "max_fpr": args.max_fpr, "min_tpr": args.min_tpr }),
            )
            .estimate("images", Some(r.images as f64))
            .estimate("threshold", Some(r.threshold as f64))
        }
    };
    write_json(&dir.join("report.json"), &report)?;
    report.write_csv(create(&dir.join("report.csv"))?)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

pub fn train_command(args: &TrainArgs, file: &FileConfig, results: &Path, out: &mut dyn Write) -> Result<()> {
    let scheme = pick("scheme", args.scheme, file_scheme(file)?, SchemeId::MemoryPalace)?;
    let defaults = TrainConfig::default();
    let seed = pick("seed", args.seed, file.seed, defaults.seed)?;
    let config = TrainConfig {
        epochs: pick("epochs", args.epochs, file.epochs, defaults.epochs)?,
        hidden: pick("hidden", args.hidden, file.hidden, defaults.hidden)?,
        learning_rate: pick("learning-rate", args.learning_rate, file.learning_rate, defaults.learning_rate)?,
        seed,
        ..defaults
    };
    let users = pick("users", args.users, file.users, 50)?;
    let sites = pick("sites", args.sites, file.sites, 10)?;
    if config.epochs == 0 || config.hidden == 0 {
        return Err(ConfigError("--epochs and --hidden must be at least 1".into()).into());
    }

    let passwords: Vec<String> = match &args.records {
        Some(path) => RecordStore::new(path)
            .load()?
            .records
            .into_iter()
            .filter(|r| SchemeId::from_str(&r.scheme).ok() == Some(scheme))
            .map(|r| r.password)
            .collect(),
        None => simulate_records(&Lab::default(), scheme, users, sites, seed)?
            .into_iter()
            .map(|r| r.password)
            .collect(),
    };

    let dir = run_dir(results, "train", &format!("{scheme}-seed{seed}"))?;
    log_run(
        &dir,
        "train",
        Some(seed),
        json!({ "scheme": scheme, "config": config, "passwords": passwords.len(), "records": args.records }),
    )?;
    let outcome = train::<f64, _>(&passwords, &config)?;
    let accuracy = last_char_accuracy(&outcome.model, &passwords)?;
    let ngram = last_char_accuracy(&ngram_baseline(&passwords, 3)?, &passwords)?;

    write_json(&dir.join("checkpoint.json"), &outcome.model.checkpoint())?;
    write_curve_csv(&outcome.curve, create(&dir.join("curve.csv"))?)?;
    let metrics = json!({
        "scheme": scheme,
        "passwords": passwords.len(),
        "epochs": config.epochs,
        "final_loss": outcome.curve.last(),
        "last_char_accuracy": accuracy,
        "trigram_last_char_accuracy": ngram,
    });
    write_json(&dir.join("metrics.json"), &metrics)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&metrics)?)?;
    Ok(())
}

pub fn serve(args: &ServeArgs, out: &mut dyn Write) -> Result<()> {
    let config = ServiceConfig {
        idle_timeout: Duration::from_secs(args.idle_timeout),
        store: args.persist.as_ref().map(RecordStore::new),
        box_seed: args.box_seed,
    };
    let addr = SocketAddr::new(args.host, args.port);
    writeln!(out, "listening on http://{addr}/v1")?;
    out.flush()?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(server::serve(addr, config))
}
