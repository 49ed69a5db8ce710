use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adoge::{embed_dataset, ColumnDescriptor, DatasetEmbedding, EmbeddingConfig};
use anyhow::Context;
use clap::Args;
use serde::Serialize;

use crate::{ConfigArgs, InputArgs};

#[derive(Args, Debug)]
pub struct EmbedArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Embedding CSV; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    out: PathBuf,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,

    /// JSON run report.
    #[arg(long)]
    report: Option<PathBuf>,

    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Serialize)]
struct ManifestFile<'a> {
    total: usize,
    labels: Vec<String>,
    columns: &'a [ColumnDescriptor],
}

#[derive(Serialize)]
struct GraphTiming {
    graph_id: usize,
    seconds: f64,
}

#[derive(Serialize)]
struct GraphError {
    graph_id: usize,
    error: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    dataset: &'a str,
    graphs: usize,
    embedded: usize,
    features: usize,
    workers: usize,
    timings: Vec<GraphTiming>,
    failures: Vec<GraphError>,
    warnings: Vec<String>,
    config: &'a EmbeddingConfig,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn render_csv(result: &DatasetEmbedding) -> String {
    let mut csv = String::from("graph_id");
    for label in result.manifest.labels() {
        csv.push(',');
        csv.push_str(&label);
    }
    csv.push('\n');
    for e in &result.embeddings {
        let _ = write!(csv, "{}", e.graph_id);
        for v in &e.values {
            let _ = write!(csv, ",{v:.16e}");
        }
        csv.push('\n');
    }
    csv
}

fn warnings(result: &DatasetEmbedding) -> Vec<String> {
    let mut out = result.warnings.clone();
    for e in &result.embeddings {
        let d = &e.diagnostics;
        if d.clamped_ritz > 0 {
            out.push(format!(
                "graph {}: {} Ritz values clamped to [-1, 1]",
                e.graph_id, d.clamped_ritz
            ));
        }
        if d.guarded_hits > 0 {
            out.push(format!(
                "graph {}: {} histograms carry mass in power-guarded bins",
                e.graph_id, d.guarded_hits
            ));
        }
        if !d.zero_signals.is_empty() {
            out.push(format!(
                "graph {}: zero signals {}",
                e.graph_id,
                d.zero_signals.join(", ")
            ));
        }
    }
    out
}

pub fn run(args: &EmbedArgs) -> anyhow::Result<ExitCode> {
    let ds = args.input.load()?;
    let cfg = args.config.build(&ds.schema)?;
    let workers = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    log::info!("embedding {} graphs of {} on {workers} workers", ds.len(), ds.name);
    let result = embed_dataset(&ds, &cfg, workers)?;

    fs::write(&args.out, render_csv(&result)).with_context(|| format!("writing {}", args.out.display()))?;
    let manifest = ManifestFile {
        total: result.manifest.len(),
        labels: result.manifest.labels(),
        columns: &result.manifest.columns,
    };
    let mpath = manifest_path(&args.out);
    fs::write(&mpath, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", mpath.display()))?;

    for f in &result.failures {
        eprintln!("error: graph {}: {}", f.graph_index, f.error);
    }
    if let Some(path) = &args.report {
        let report = RunReport {
            dataset: &ds.name,
            graphs: ds.len(),
            embedded: result.embeddings.len(),
            features: result.manifest.len(),
            workers,
            timings: result
                .embeddings
                .iter()
                .zip(&result.timings)
                .map(|(e, t)| GraphTiming {
                    graph_id: e.graph_id,
                    seconds: t.as_secs_f64(),
                })
                .collect(),
            failures: result
                .failures
                .iter()
                .map(|f| GraphError {
                    graph_id: f.graph_index,
                    error: f.error.to_string(),
                })
                .collect(),
            warnings: warnings(&result),
            config: &cfg,
        };
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }

    if result.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else if result.embeddings.is_empty() {
        eprintln!("error: every graph failed");
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::from(2))
    }
}
