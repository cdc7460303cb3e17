//! Dataset loading and repeated timed runs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::detect::{run_coin, CoinConfig, StageTimings};
use crate::error::Result;
use crate::eval::nmi;
use crate::graph::{parse_edge_list, parse_gml, parse_label_file, Graph, NodeLabeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Gml,
}

impl GraphFormat {
    /// `.gml` files are GML, anything else is read as an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("gml") => GraphFormat::Gml,
            _ => GraphFormat::EdgeList,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub labeling: NodeLabeling,
}

/// Sidecar ground-truth file: `<stem>.labels` next to the graph file.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("labels")
}

/// Loads a graph file. Ground truth comes from GML `value` attributes or,
/// when those are absent, from a sidecar `.labels` file.
pub fn load_dataset(path: &Path, format: Option<GraphFormat>) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    let parsed = match format.unwrap_or_else(|| GraphFormat::from_path(path)) {
        GraphFormat::Gml => parse_gml(&text)?,
        GraphFormat::EdgeList => parse_edge_list(&text)?,
    };
    let mut labeling = parsed.labeling;
    let sidecar = sidecar_path(path);
    if labeling.ground_truth.is_none() && sidecar.is_file() {
        let map = parse_label_file(&fs::read_to_string(&sidecar)?)?;
        labeling = NodeLabeling::from_label_map(&parsed.graph, &map)?;
    }
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    Ok(Dataset {
        name,
        graph: parsed.graph,
        labeling,
    })
}

/// Graph files in `dir` (`.gml`, `.edgelist`, `.edges`, `.txt`), sorted by name.
pub fn discover_datasets(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && matches!(
                    p.extension().and_then(|e| e.to_str()),
                    Some("gml" | "edgelist" | "edges" | "txt")
                )
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub dataset: String,
    pub nodes: usize,
    pub edges: usize,
    pub communities: usize,
    pub ground_truth_communities: Option<usize>,
    pub nmi: Option<f64>,
    pub identical_concepts: usize,
    pub repeats: usize,
    /// Mean elapsed milliseconds per stage (τ).
    pub mean_ms: StageTimings,
    pub config: CoinConfig,
    pub version: &'static str,
}

/// Runs the pipeline `repeats` times. Communities and NMI come from the
/// first run (every run is identical for a fixed config); timings are
/// averaged.
pub fn bench_dataset(ds: &Dataset, cfg: &CoinConfig, repeats: usize) -> Result<RunReport> {
    let repeats = repeats.max(1);
    let first = run_coin(&ds.graph, cfg)?;
    let mut sum = first.timings;
    for _ in 1..repeats {
        let t = run_coin(&ds.graph, cfg)?.timings;
        sum.stage1 += t.stage1;
        sum.stage2 += t.stage2;
        sum.total += t.total;
    }
    let r = repeats as f64;
    let mean_ms = StageTimings {
        stage1: sum.stage1 / r,
        stage2: sum.stage2 / r,
        total: sum.total / r,
    };
    let nmi = match (
        ds.labeling.ground_truth_partition(),
        first.communities.partition(),
    ) {
        (Some(truth), Ok(pred)) => Some(nmi(&truth, &pred)?),
        _ => None,
    };
    Ok(RunReport {
        dataset: ds.name.clone(),
        nodes: ds.graph.node_count(),
        edges: ds.graph.edge_count(),
        communities: first.communities.len(),
        ground_truth_communities: ds
            .labeling
            .ground_truth
            .as_ref()
            .map(|_| ds.labeling.num_communities()),
        nmi,
        identical_concepts: first.scored.len(),
        repeats,
        mean_ms,
        config: *cfg,
        version: env!("CARGO_PKG_VERSION"),
    })
}

pub const CSV_HEADER: &str =
    "dataset,nodes,edges,communities,nmi,identical_concepts,repeats,tau_ms";

pub fn reports_to_csv(reports: &[RunReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.3}\n",
            r.dataset,
            r.nodes,
            r.edges,
            r.communities,
            r.nmi.map_or_else(String::new, |v| format!("{v:.3}")),
            r.identical_concepts,
            r.repeats,
            r.mean_ms.total
        ));
    }
    out
}

/// Human-readable table: `NMI (communities)` per dataset, as usually reported.
pub fn reports_table(reports: &[RunReport]) -> String {
    let mut out = format!(
        "{:<12} {:>6} {:>6} {:>14} {:>10}\n",
        "dataset", "|G|", "|I|", "NMI (comms)", "tau ms"
    );
    for r in reports {
        let score = match r.nmi {
            Some(v) => format!("{v:.3} ({})", r.communities),
            None => format!("- ({})", r.communities),
        };
        out.push_str(&format!(
            "{:<12} {:>6} {:>6} {:>14} {:>10.3}\n",
            r.dataset, r.nodes, r.edges, score, r.mean_ms.total
        ));
    }
    out
}
