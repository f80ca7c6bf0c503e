//! Manifest-driven benchmark runs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use serde::{Deserialize, Serialize};
use tricount::{count_ordered, generate, GenSpec, Graph};

use crate::{read_graph, relative_error, run_estimate, CliResult, RunArgs, Tag, INPUT, USAGE};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    path: Option<PathBuf>,
    genspec: Option<GenSpec>,
    seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub exact_t: u64,
    pub seed: u64,
    pub estimate: f64,
    pub rel_err: f64,
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub pair_queries: u64,
    pub vertex_samples: u64,
    pub graph_queries: u64,
    pub fallback_used: bool,
    pub wall_ms: u64,
}

fn load_instance(entry: &Entry, base: &Path, index: usize) -> CliResult<(String, Graph)> {
    match (&entry.path, &entry.genspec) {
        (Some(p), None) => {
            let full = if p.is_absolute() { p.clone() } else { base.join(p) };
            Ok((p.display().to_string(), read_graph(&full)?))
        }
        (None, Some(spec)) => {
            let g = generate(spec)
                .with_context(|| format!("manifest entry {index}"))
                .tag(USAGE)?
                .graph;
            let label = format!("{}:{}", spec.family, spec.seed);
            Ok((label, g))
        }
        _ => Err(anyhow!("manifest entry {index}: give exactly one of `path` and `genspec`")).tag(INPUT),
    }
}

/// One row per (entry, seed), in manifest order.
pub fn run(manifest: &Path, run: &RunArgs) -> CliResult<Vec<Row>> {
    let text = fs::read_to_string(manifest)
        .with_context(|| format!("cannot read {}", manifest.display()))
        .tag(INPUT)?;
    let entries: Vec<Entry> = serde_json::from_str(&text)
        .with_context(|| format!("invalid manifest {}", manifest.display()))
        .tag(INPUT)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let mut rows = Vec::new();
    for (index, entry) in entries.iter().enumerate() {
        let (instance, g) = load_instance(entry, base, index)?;
        let exact_t = count_ordered(&g).t;
        for &seed in &entry.seeds {
            let report = run_estimate(&g, run, seed)?;
            let q = report.queries.total;
            rows.push(Row {
                instance: instance.clone(),
                n: g.n(),
                m: g.m(),
                exact_t,
                seed,
                estimate: report.estimate,
                rel_err: relative_error(report.estimate, exact_t),
                degree_queries: q.degree_queries,
                neighbor_queries: q.neighbor_queries,
                pair_queries: q.pair_queries,
                vertex_samples: q.vertex_samples,
                graph_queries: q.graph_queries(),
                fallback_used: report.fallback_used,
                wall_ms: report.wall_ms,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(w: W, rows: &[Row]) -> anyhow::Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record([
        "instance",
        "n",
        "m",
        "exact_t",
        "seed",
        "estimate",
        "rel_err",
        "degree_queries",
        "neighbor_queries",
        "pair_queries",
        "vertex_samples",
        "graph_queries",
        "fallback_used",
        "wall_ms",
    ])?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
