use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Parser, Subcommand, ValueEnum};

use conflict_lens::config::Config;
use conflict_lens::conflict::{detect, overlap_groups};
use conflict_lens::eval::{evaluate, scale_residents, scale_tsv, sweep_threshold, sweep_tsv};
use conflict_lens::io::store::reports_tsv;
use conflict_lens::io::synthetic::presets;
use conflict_lens::io::{
    generate_synthetic, load_habits, load_reports, load_truth, parse_log, print_log, save_habits,
    save_reports, save_truth, ParsedLog, SyntheticProfile,
};
use conflict_lens::{pipeline, Error, Result};

#[derive(Parser)]
#[command(
    name = "conflict-lens",
    version,
    about = "Detect IoT service conflicts among smart-home residents"
)]
struct Cli {
    /// TOML settings file.
    #[arg(long, global = true, env = "CONFLICT_LENS_CONFIG")]
    config: Option<PathBuf>,
    /// Proximity threshold in [0, 1]; overrides `detect.mu`.
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Seed for generated data; overrides the profile's own.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (a directory for `generate`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Definite,
    Probable,
    Mixed,
    Pruning,
    Household,
}

#[derive(clap::Args)]
struct ProfileSource {
    /// Profile JSON file.
    #[arg(long, conflicts_with = "preset")]
    profile: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Mixed)]
    preset: Preset,
    /// Days for presets.
    #[arg(long, default_value_t = 20)]
    days: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a sensor log and print it back in canonical form.
    Ingest {
        log: PathBuf,
        /// `SENSOR=LOCATION` for sensors written without `@location`.
        #[arg(long = "sensor-location", value_parser = parse_pair)]
        sensor_locations: Vec<(String, String)>,
    },
    /// Mine a habit database from a log.
    Mine {
        log: PathBuf,
        /// First day to use (inclusive).
        #[arg(long)]
        from: Option<NaiveDate>,
        /// Last day to use (inclusive).
        #[arg(long)]
        until: Option<NaiveDate>,
    },
    /// Classify the overlap groups of a habit database.
    Detect { habits: PathBuf },
    /// Write a synthetic log (`events.log`) and its ground truth (`truth.json`).
    Generate {
        #[command(flatten)]
        source: ProfileSource,
    },
    /// Score a report document against ground truth.
    Evaluate { reports: PathBuf, truth: PathBuf },
    /// Recall per class over a range of thresholds.
    Sweep {
        habits: PathBuf,
        truth: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0])]
        mus: Vec<f64>,
    },
    /// Conflict counts as residents are added to a profile.
    Scale {
        #[command(flatten)]
        source: ProfileSource,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        residents: Vec<usize>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("expected SENSOR=LOCATION, got `{s}`"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn report_issues(parsed: &ParsedLog) {
    for issue in &parsed.malformed {
        eprintln!("line {}: malformed: {}", issue.line, issue.reason);
    }
    for issue in &parsed.flagged {
        eprintln!("line {}: repaired: {}", issue.line, issue.reason);
    }
}

fn load_profile(source: &ProfileSource, seed: Option<u64>) -> Result<SyntheticProfile> {
    let seed_or = |default| seed.unwrap_or(default);
    let mut profile = match (&source.profile, source.preset) {
        (Some(path), _) => serde_json::from_str(&read(path)?)?,
        (None, Preset::Definite) => presets::definite_conflict(seed_or(1), source.days),
        (None, Preset::Probable) => presets::probable_conflict(seed_or(1), source.days),
        (None, Preset::Mixed) => presets::mixed_benchmark(seed_or(1), source.days),
        (None, Preset::Pruning) => presets::pruning_benchmark(seed_or(1), source.days, 20),
        (None, Preset::Household) => presets::household(seed_or(1), source.days),
    };
    if let Some(seed) = seed {
        profile.seed = seed;
    }
    Ok(profile)
}

fn run(cli: Cli) -> Result<()> {
    let config = Config::load_or_default(cli.config.as_deref())?;
    let mu = cli.mu.unwrap_or(config.detect.mu);
    let out = cli.out.as_deref();
    let tsv = cli.format == Format::Tsv;

    match &cli.command {
        Command::Ingest {
            log,
            sensor_locations,
        } => {
            let mut options = config.parse_options();
            options
                .sensor_locations
                .extend(sensor_locations.iter().cloned());
            let parsed = parse_log(&read(log)?, &options);
            report_issues(&parsed);
            emit(out, &print_log(&parsed.events)?)
        }
        Command::Mine { log, from, until } => {
            let parsed = parse_log(&read(log)?, &config.parse_options());
            report_issues(&parsed);
            let events = pipeline::date_range(&parsed.events, *from, *until);
            emit(out, &save_habits(&pipeline::mine(&events, &config)?)?)
        }
        Command::Detect { habits } => {
            let reports = detect(&overlap_groups(&load_habits(&read(habits)?)?), mu)?;
            emit(
                out,
                &if tsv {
                    reports_tsv(&reports)
                } else {
                    save_reports(&reports, mu)?
                },
            )
        }
        Command::Generate { source } => {
            let profile = load_profile(source, cli.seed)?;
            let data = generate_synthetic(&profile)?;
            let dir = out.unwrap_or(Path::new("."));
            fs::create_dir_all(dir)?;
            fs::write(dir.join("events.log"), print_log(&data.events)?)?;
            fs::write(dir.join("truth.json"), save_truth(&data.truth)?)?;
            eprintln!(
                "{} events, {} planted groups in {}",
                data.events.len(),
                data.truth.len(),
                dir.display()
            );
            Ok(())
        }
        Command::Evaluate { reports, truth } => {
            let reports = load_reports(&read(reports)?)?.reports;
            let metrics = evaluate(&reports, &load_truth(&read(truth)?)?)?;
            emit(
                out,
                &if tsv {
                    metrics.to_tsv()
                } else {
                    json(&metrics)?
                },
            )
        }
        Command::Sweep { habits, truth, mus } => {
            let groups = overlap_groups(&load_habits(&read(habits)?)?);
            let rows = sweep_threshold(&groups, &load_truth(&read(truth)?)?, mus)?;
            emit(out, &if tsv { sweep_tsv(&rows) } else { json(&rows)? })
        }
        Command::Scale { source, residents } => {
            let profile = load_profile(source, cli.seed)?;
            let rows = scale_residents(&profile, residents, &config, mu)?;
            emit(out, &if tsv { scale_tsv(&rows) } else { json(&rows)? })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
