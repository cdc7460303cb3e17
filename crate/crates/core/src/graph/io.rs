//! Graph file formats: whitespace edge lists, a GML subset, JSON and DOT.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, NodeId, NodeLabeling};
use crate::error::{CoinError, Result};

/// Input records that were dropped or ignored while parsing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseWarnings {
    pub self_loops: usize,
    pub duplicate_edges: usize,
    /// The GML header declared `directed 1`; edges were read as undirected.
    pub directed_ignored: bool,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labeling: NodeLabeling,
    pub warnings: ParseWarnings,
}

fn parse_err(line: usize, message: impl Into<String>) -> CoinError {
    CoinError::Parse {
        line,
        message: message.into(),
    }
}

/// Sorts labels numerically when every label is an integer, lexically
/// otherwise.
fn sort_labels(labels: &mut [String]) {
    let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse().ok()).collect();
    if numeric.is_some() {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

/// Parses `<labelA> <labelB>` lines. `#` starts a comment; a line holding a
/// single label declares a node without edges.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut pairs: Vec<(String, Option<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [a] => pairs.push((a.to_string(), None)),
            [a, b] => pairs.push((a.to_string(), Some(b.to_string()))),
            _ => {
                return Err(parse_err(
                    i + 1,
                    format!(
                        "expected `<labelA> <labelB>`, found {} fields",
                        tokens.len()
                    ),
                ))
            }
        }
    }

    let mut labels: Vec<String> = pairs
        .iter()
        .flat_map(|(a, b)| std::iter::once(a.clone()).chain(b.clone()))
        .collect();
    sort_labels(&mut labels);
    labels.dedup();
    let index: HashMap<&str, NodeId> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let edges: Vec<(NodeId, NodeId)> = pairs
        .iter()
        .filter_map(|(a, b)| b.as_ref().map(|b| (index[a.as_str()], index[b.as_str()])))
        .collect();

    let (graph, stats) = Graph::from_labeled_edges(labels, edges);
    let labeling = NodeLabeling::unlabeled(&graph);
    Ok(ParsedGraph {
        graph,
        labeling,
        warnings: ParseWarnings {
            self_loops: stats.self_loops,
            duplicate_edges: stats.duplicate_edges,
            directed_ignored: false,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
enum GmlValue {
    Scalar(String),
    List(Vec<(String, GmlValue, usize)>),
}

struct GmlTokens<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
    Str(String),
}

impl<'a> GmlTokens<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
        }
    }

    fn next(&mut self) -> Result<Option<(Tok, usize)>> {
        loop {
            match self.chars.peek() {
                None => return Ok(None),
                Some('\n') => {
                    self.line += 1;
                    self.chars.next();
                }
                Some(c) if c.is_whitespace() => {
                    self.chars.next();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.chars.next();
                    }
                }
                Some(_) => break,
            }
        }
        let line = self.line;
        let c = self.chars.next().unwrap();
        let tok = match c {
            '[' => Tok::Open,
            ']' => Tok::Close,
            '"' => {
                let mut s = String::new();
                loop {
                    match self.chars.next() {
                        None => return Err(parse_err(line, "unterminated string")),
                        Some('"') => break,
                        Some(ch) => {
                            if ch == '\n' {
                                self.line += 1;
                            }
                            s.push(ch);
                        }
                    }
                }
                Tok::Str(s)
            }
            _ => {
                let mut s = String::from(c);
                while let Some(&ch) = self.chars.peek() {
                    if ch.is_whitespace() || ch == '[' || ch == ']' || ch == '"' {
                        break;
                    }
                    s.push(ch);
                    self.chars.next();
                }
                Tok::Word(s)
            }
        };
        Ok(Some((tok, line)))
    }
}

fn parse_gml_list(
    tokens: &mut GmlTokens<'_>,
    nested: bool,
) -> Result<Vec<(String, GmlValue, usize)>> {
    let mut items = Vec::new();
    loop {
        let (tok, line) = match tokens.next()? {
            Some(t) => t,
            None if nested => {
                return Err(parse_err(tokens.line, "unbalanced brackets: missing `]`"))
            }
            None => return Ok(items),
        };
        let key = match tok {
            Tok::Close if nested => return Ok(items),
            Tok::Close => return Err(parse_err(line, "unbalanced brackets: unexpected `]`")),
            Tok::Word(w) => w,
            Tok::Open | Tok::Str(_) => return Err(parse_err(line, "expected a key")),
        };
        let value = match tokens.next()? {
            None => return Err(parse_err(line, format!("key `{key}` has no value"))),
            Some((Tok::Open, _)) => GmlValue::List(parse_gml_list(tokens, true)?),
            Some((Tok::Word(w), _)) | Some((Tok::Str(w), _)) => GmlValue::Scalar(w),
            Some((Tok::Close, l)) => return Err(parse_err(l, format!("key `{key}` has no value"))),
        };
        items.push((key, value, line));
    }
}

fn scalar<'a>(items: &'a [(String, GmlValue, usize)], key: &str) -> Option<&'a str> {
    items.iter().find_map(|(k, v, _)| match v {
        GmlValue::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

fn gml_id(items: &[(String, GmlValue, usize)], key: &str, line: usize, what: &str) -> Result<i64> {
    let raw =
        scalar(items, key).ok_or_else(|| parse_err(line, format!("{what} without `{key}`")))?;
    raw.parse()
        .map_err(|_| parse_err(line, format!("{what} `{key}` is not an integer: {raw}")))
}

/// Parses the GML subset used by the classic network datasets:
/// `graph [ node [ id N label "..." value V ] edge [ source A target B ] ]`.
///
/// Nodes are ordered by id. When every node carries a `value`, the values
/// become the ground-truth communities.
pub fn parse_gml(text: &str) -> Result<ParsedGraph> {
    let mut tokens = GmlTokens::new(text);
    let top = parse_gml_list(&mut tokens, false)?;
    let (graph_items, _) = top
        .iter()
        .find_map(|(k, v, l)| match v {
            GmlValue::List(items) if k == "graph" => Some((items, *l)),
            _ => None,
        })
        .ok_or_else(|| parse_err(1, "no `graph [ ... ]` block"))?;

    let mut warnings = ParseWarnings {
        directed_ignored: scalar(graph_items, "directed").is_some_and(|d| d.trim() == "1"),
        ..Default::default()
    };

    // id -> (label, value)
    let mut nodes: BTreeMap<i64, (Option<String>, Option<String>)> = BTreeMap::new();
    let mut raw_edges = Vec::new();
    for (key, value, line) in graph_items {
        let GmlValue::List(items) = value else {
            continue;
        };
        match key.as_str() {
            "node" => {
                let id = gml_id(items, "id", *line, "node")?;
                let label = scalar(items, "label").map(str::to_string);
                let val = scalar(items, "value").map(str::to_string);
                if nodes.insert(id, (label, val)).is_some() {
                    return Err(parse_err(*line, format!("duplicate node id {id}")));
                }
            }
            "edge" => {
                let s = gml_id(items, "source", *line, "edge")?;
                let t = gml_id(items, "target", *line, "edge")?;
                raw_edges.push((s, t, *line));
            }
            _ => {}
        }
    }

    let position: HashMap<i64, NodeId> = nodes.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (s, t, line) in raw_edges {
        let (Some(&u), Some(&v)) = (position.get(&s), position.get(&t)) else {
            let missing = if position.contains_key(&s) { t } else { s };
            return Err(parse_err(
                line,
                format!("edge references unknown node id {missing}"),
            ));
        };
        edges.push((u, v));
    }

    let mut labels: Vec<String> = nodes
        .iter()
        .map(|(id, (label, _))| label.clone().unwrap_or_else(|| id.to_string()))
        .collect();
    let mut unique = labels.clone();
    unique.sort();
    unique.dedup();
    if unique.len() != labels.len() {
        labels = nodes.keys().map(i64::to_string).collect();
    }

    let values: Option<Vec<String>> = nodes.values().map(|(_, v)| v.clone()).collect();
    let (graph, stats) = Graph::from_labeled_edges(labels.clone(), edges);
    warnings.self_loops = stats.self_loops;
    warnings.duplicate_edges = stats.duplicate_edges;
    let labeling = match values {
        Some(values) if !values.is_empty() => NodeLabeling::with_raw_communities(labels, &values),
        _ => NodeLabeling::unlabeled(&graph),
    };
    Ok(ParsedGraph {
        graph,
        labeling,
        warnings,
    })
}

/// Parses `<label> <community>` lines into a map.
pub fn parse_label_file(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [label, community] = tokens.as_slice() else {
            return Err(parse_err(i + 1, "expected `<label> <community>`"));
        };
        if map
            .insert(label.to_string(), community.to_string())
            .is_some()
        {
            return Err(parse_err(i + 1, format!("label {label} listed twice")));
        }
    }
    Ok(map)
}

/// `{"nodes": [labels], "edges": [[a, b], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

pub fn to_json_graph(g: &Graph) -> GraphJson {
    GraphJson {
        nodes: g.labels().to_vec(),
        edges: g
            .edges()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect(),
    }
}

pub fn parse_json_graph(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text)?;
    let index: HashMap<&str, NodeId> = doc
        .nodes
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if index.len() != doc.nodes.len() {
        return Err(parse_err(1, "duplicate node label"));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (a, b) in &doc.edges {
        let u = *index
            .get(a.as_str())
            .ok_or_else(|| CoinError::UnknownNode(a.clone()))?;
        let v = *index
            .get(b.as_str())
            .ok_or_else(|| CoinError::UnknownNode(b.clone()))?;
        edges.push((u, v));
    }
    Ok(Graph::from_labeled_edges(doc.nodes, edges).0)
}

/// Edge list text; nodes without edges are written as single-label lines.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    for v in 0..g.node_count() {
        if g.neighbors(v).is_empty() {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    out
}

const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff",
];

/// Graphviz DOT. With `community` given, nodes are filled by community index.
pub fn to_dot(g: &Graph, community: Option<&[usize]>) -> String {
    let mut out = String::from("graph G {\n  node [style=filled];\n");
    for v in 0..g.node_count() {
        let label = g.label(v).replace('"', "\\\"");
        match community.and_then(|c| c.get(v)) {
            Some(&c) => {
                let _ = writeln!(
                    out,
                    "  n{v} [label=\"{label}\", fillcolor=\"{}\", community={c}];",
                    PALETTE[c % PALETTE.len()]
                );
            }
            None => {
                let _ = writeln!(out, "  n{v} [label=\"{label}\"];");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  n{u} -- n{v};");
    }
    out.push_str("}\n");
    out
}
