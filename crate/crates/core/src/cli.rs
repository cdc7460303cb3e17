//! Command-line front end. The `coin` binary only forwards to [`run`].

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{
    bench_dataset, discover_datasets, load_dataset, reports_table, reports_to_csv, GraphFormat,
};
use crate::detect::{run_coin, CoinConfig, CommunityJson, MergeSizes};
use crate::error::{CoinError, Result};
use crate::eval::{confusion_matrix, Partition};
use crate::fca::{build_one_mode_context, enumerate_concepts, fast_identical_concepts};
use crate::graph::{parse_gml, parse_label_file, to_dot, to_edge_list, to_json_graph, Graph};
use crate::stability::{stability, StabilityValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "coin", version, about = "Concept-lattice community detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities and write them as JSON.
    Detect(DetectArgs),
    /// Score a community JSON file against ground truth.
    Eval(EvalArgs),
    /// List identical concepts (maximal cliques) or the full lattice.
    Concepts(ConceptsArgs),
    /// Stability of every identical concept as CSV.
    Stability(StabilityArgs),
    /// Timed runs over every graph file in a directory.
    Bench(BenchArgs),
    /// Convert a graph to another format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Gml,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MergeArg {
    Current,
    Original,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file (edge list or GML).
    pub graph: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

impl GraphInput {
    fn format(&self) -> Option<GraphFormat> {
        self.format.map(|f| match f {
            FormatArg::Edgelist => GraphFormat::EdgeList,
            FormatArg::Gml => GraphFormat::Gml,
        })
    }

    fn load(&self) -> std::result::Result<Graph, Failure> {
        match load_dataset(&self.graph, self.format()) {
            Ok(ds) => Ok(ds.graph),
            Err(CoinError::Io(e)) => Err(io_err(&self.graph, e)),
            Err(e) => Err(e.into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct Tuning {
    #[arg(long, env = "COIN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Subsets drawn per concept on the sampled path.
    #[arg(long, default_value_t = crate::stability::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Largest extent scored exactly.
    #[arg(long, default_value_t = crate::stability::DEFAULT_EXACT_THRESHOLD)]
    pub exact_threshold: usize,
    /// Which sizes the percolation merge test uses.
    #[arg(long, value_enum, default_value = "current")]
    pub merge_sizes: MergeArg,
    /// Leave uncovered nodes out instead of adding singleton communities.
    #[arg(long)]
    pub no_backfill: bool,
}

impl Tuning {
    pub fn config(&self) -> CoinConfig {
        CoinConfig {
            seed: self.seed,
            budget: self.budget,
            exact_threshold: self.exact_threshold,
            singleton_backfill: !self.no_backfill,
            merge_sizes: match self.merge_sizes {
                MergeArg::Current => MergeSizes::Current,
                MergeArg::Original => MergeSizes::Original,
            },
            ..CoinConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Write JSON here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write a Graphviz file coloured by community.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Include per-stage wall-clock timings (output is then not reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Community JSON written by `detect`.
    pub predicted: PathBuf,
    /// GML file whose `value` attributes hold the true communities.
    #[arg(
        long,
        conflicts_with = "truth_labels",
        required_unless_present = "truth_labels"
    )]
    pub truth_gml: Option<PathBuf>,
    /// `node community` pairs, one per line.
    #[arg(long)]
    pub truth_labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConceptsArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Enumerate every formal concept, flagging identical ones.
    #[arg(long)]
    pub full_lattice: bool,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, env = "COIN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::stability::DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = crate::stability::DEFAULT_EXACT_THRESHOLD)]
    pub exact_threshold: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of graph files; ground truth from GML values or `.labels` sidecars.
    pub dir: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub repeats: usize,
    /// Also write the results as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: Tuning,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    Json,
    Edgelist,
    Dot,
    /// Burmeister context of the adjacency matrix with full diagonal.
    Cxt,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long = "to", value_enum)]
    pub to: ExportFormat,
}

/// Failure of a command together with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<CoinError> for Failure {
    fn from(e: CoinError) -> Self {
        let code = match e {
            CoinError::Io(_)
            | CoinError::Parse { .. }
            | CoinError::Json(_)
            | CoinError::UnknownNode(_)
            | CoinError::UniverseMismatch(_)
            | CoinError::Partition(_)
            | CoinError::Budget { .. }
            | CoinError::Config(_) => EXIT_USAGE,
            _ => EXIT_PIPELINE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Detect(a) => detect(a, out),
        Command::Eval(a) => eval(a, out),
        Command::Concepts(a) => concepts(a, out),
        Command::Stability(a) => stability_csv(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Export(a) => export(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("stdout: {e}")))
}

fn detect(a: &DetectArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let g = a.input.load()?;
    let cfg = a.tuning.config();
    let run = run_coin(&g, &cfg)?;
    let timings = a.timings.then_some(run.timings);
    let doc = run.communities.to_json(&g, &cfg, timings);
    let mut json = serde_json::to_string_pretty(&doc).map_err(CoinError::from)?;
    json.push('\n');
    match &a.output {
        Some(p) => fs::write(p, &json).map_err(|e| io_err(p, e))?,
        None => emit(out, &json)?,
    }
    if let Some(p) = &a.dot {
        let assignment: Vec<usize> = run
            .communities
            .assignment()
            .into_iter()
            .map(|c| c.unwrap_or(usize::MAX))
            .collect();
        fs::write(p, to_dot(&g, Some(&assignment))).map_err(|e| io_err(p, e))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct EvalReport {
    nmi: f64,
    num_pred: usize,
    num_truth: usize,
    confusion: Vec<Vec<u64>>,
}

/// Maps a list of labelled blocks onto `labels` and validates it as a partition.
fn labelled_partition(labels: &[String], blocks: &[Vec<String>], what: &str) -> Result<Partition> {
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut ids = Vec::with_capacity(b.len());
        for l in b {
            match index.get(l.as_str()) {
                Some(&i) => ids.push(i),
                None => {
                    return Err(CoinError::UniverseMismatch(format!(
                        "{what} node {l:?} is not in the ground truth"
                    )))
                }
            }
        }
        out.push(ids);
    }
    Partition::new(labels.len(), out).map_err(|e| match e {
        CoinError::Partition(m) => CoinError::UniverseMismatch(format!("{what}: {m}")),
        other => other,
    })
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn eval(a: &EvalArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let pred: CommunityJson =
        serde_json::from_str(&read(&a.predicted)?).map_err(CoinError::from)?;
    let (labels, truth_blocks): (Vec<String>, Vec<Vec<String>>) = if let Some(p) = &a.truth_gml {
        let parsed = parse_gml(&read(p)?)?;
        let truth = parsed.labeling.ground_truth_partition().ok_or_else(|| {
            usage(format!(
                "{}: no node carries a `value` attribute",
                p.display()
            ))
        })?;
        let labels = parsed.graph.labels().to_vec();
        let blocks = truth
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&v| labels[v].clone()).collect())
            .collect();
        (labels, blocks)
    } else if let Some(p) = &a.truth_labels {
        let map = parse_label_file(&read(p)?)?;
        let mut labels: Vec<String> = map.keys().cloned().collect();
        labels.sort();
        let mut by_name: Vec<(String, Vec<String>)> = Vec::new();
        for l in &labels {
            let c = &map[l];
            match by_name.iter_mut().find(|(n, _)| n == c) {
                Some((_, b)) => b.push(l.clone()),
                None => by_name.push((c.clone(), vec![l.clone()])),
            }
        }
        (labels, by_name.into_iter().map(|(_, b)| b).collect())
    } else {
        return Err(usage("one of --truth-gml or --truth-labels is required"));
    };
    let truth = labelled_partition(&labels, &truth_blocks, "truth")?;
    let pred_blocks: Vec<Vec<String>> = pred.communities.into_iter().map(|c| c.members).collect();
    let pred = labelled_partition(&labels, &pred_blocks, "predicted")?;
    let cm = confusion_matrix(&truth, &pred)?;
    let report = EvalReport {
        nmi: cm.nmi()?,
        num_pred: pred.num_blocks(),
        num_truth: truth.num_blocks(),
        confusion: cm.counts,
    };
    let mut json = serde_json::to_string_pretty(&report).map_err(CoinError::from)?;
    json.push('\n');
    emit(out, &json)
}

fn members(g: &Graph, set: &crate::set::NodeSet) -> String {
    set.iter().map(|v| g.label(v)).collect::<Vec<_>>().join(" ")
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> std::result::Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| usage(format!("csv: {e}")))
}

fn csv_fail(e: csv::Error) -> Failure {
    usage(format!("csv: {e}"))
}

fn concepts(a: &ConceptsArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let g = a.input.load()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    if a.full_lattice {
        let ctx = build_one_mode_context(&g);
        let lattice = enumerate_concepts(&ctx)?;
        w.write_record(["extent", "intent", "identical"])
            .map_err(csv_fail)?;
        for c in lattice.iter() {
            w.write_record([
                members(&g, &c.extent),
                members(&g, &c.intent),
                c.is_identical().to_string(),
            ])
            .map_err(csv_fail)?;
        }
    } else {
        w.write_record(["members", "size"]).map_err(csv_fail)?;
        for c in fast_identical_concepts(&g) {
            w.write_record([members(&g, &c.members), c.size().to_string()])
                .map_err(csv_fail)?;
        }
    }
    emit(out, &csv_text(w)?)
}

fn stability_csv(a: &StabilityArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let g = a.input.load()?;
    let cfg = CoinConfig {
        seed: a.seed,
        budget: a.budget,
        exact_threshold: a.exact_threshold,
        ..CoinConfig::default()
    };
    cfg.validate()?;
    let sampling = cfg.sampling();
    let ctx = build_one_mode_context(&g);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "concept_members",
        "size",
        "method",
        "value",
        "numerator_or_samples",
        "error_bound",
    ])
    .map_err(csv_fail)?;
    for c in fast_identical_concepts(&g) {
        let s = stability(&ctx, &c, &sampling)?;
        let (count, bound) = match s {
            StabilityValue::Exact { numerator, .. } => (numerator, 0.0),
            StabilityValue::Sampled {
                samples,
                error_bound,
                ..
            } => (samples as u64, error_bound),
        };
        w.write_record([
            members(&g, &c.members),
            c.size().to_string(),
            s.method().to_string(),
            format!("{:.6}", s.value()),
            count.to_string(),
            format!("{bound:.6}"),
        ])
        .map_err(csv_fail)?;
    }
    emit(out, &csv_text(w)?)
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let files =
        discover_datasets(&a.dir).map_err(|e| usage(format!("{}: {e}", a.dir.display())))?;
    if files.is_empty() {
        return Err(usage(format!("{}: no graph files found", a.dir.display())));
    }
    let cfg = a.tuning.config();
    let mut reports = Vec::with_capacity(files.len());
    for f in &files {
        let ds = load_dataset(f, None).map_err(|e| usage(format!("{}: {e}", f.display())))?;
        reports.push(bench_dataset(&ds, &cfg, a.repeats)?);
    }
    if let Some(p) = &a.csv {
        fs::write(p, reports_to_csv(&reports)).map_err(|e| io_err(p, e))?;
    }
    emit(out, &reports_table(&reports))
}

fn export(a: &ExportArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let g = a.input.load()?;
    let text = match a.to {
        ExportFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&to_json_graph(&g)).map_err(CoinError::from)?;
            s.push('\n');
            s
        }
        ExportFormat::Edgelist => to_edge_list(&g),
        ExportFormat::Dot => to_dot(&g, None),
        ExportFormat::Cxt => build_one_mode_context(&g).to_burmeister(),
    };
    emit(out, &text)
}
