//! Undirected simple graphs over labeled nodes.

mod algo;
pub mod io;

use std::collections::HashMap;

use crate::error::{CoinError, Result};
use crate::eval::Partition;
use crate::set::NodeSet;

pub use algo::{connected_components, find_bridges, maximal_cliques, CliqueSet};
pub use io::{
    parse_edge_list, parse_gml, parse_json_graph, parse_label_file, to_dot, to_edge_list,
    to_json_graph, GraphJson, ParseWarnings, ParsedGraph,
};

/// Dense node index, `0..node_count`.
pub type NodeId = usize;

/// Undirected simple graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    neighbors: Vec<Vec<NodeId>>,
    adjacency: Vec<NodeSet>,
    edge_count: usize,
}

/// Counts of input records that did not become edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph over `labels` from index pairs. Self-loops and
    /// repeated edges are dropped and counted.
    pub fn from_labeled_edges<I>(labels: Vec<String>, edges: I) -> (Self, BuildStats)
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut adjacency = vec![NodeSet::empty(n); n];
        let mut stats = BuildStats::default();
        let mut edge_count = 0;
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            if adjacency[u].contains(v) {
                stats.duplicate_edges += 1;
                continue;
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
            edge_count += 1;
        }
        let neighbors = adjacency.iter().map(NodeSet::to_vec).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let graph = Self {
            labels,
            index,
            neighbors,
            adjacency,
            edge_count,
        };
        (graph, stats)
    }

    /// Graph on nodes `0..=max endpoint`, labeled by their index.
    pub fn from_edges(edges: &[(NodeId, NodeId)]) -> Self {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::with_nodes(n, edges)
    }

    /// Graph on nodes `0..n`, labeled by their index.
    pub fn with_nodes(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_labeled_edges(labels, edges.iter().copied()).0
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Looks up a node by label, failing with [`CoinError::UnknownNode`].
    pub fn require_node(&self, label: &str) -> Result<NodeId> {
        self.node(label)
            .ok_or_else(|| CoinError::UnknownNode(label.to_string()))
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    /// Open neighborhood of `v` as a bitset.
    pub fn adjacency(&self, v: NodeId) -> &NodeSet {
        &self.adjacency[v]
    }

    pub fn closed_neighborhood(&self, v: NodeId) -> NodeSet {
        let mut set = self.adjacency[v].clone();
        set.insert(v);
        set
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.neighbors
            .get(v)
            .map(Vec::len)
            .ok_or_else(|| CoinError::UnknownNode(v.to_string()))
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// True when `set` is a clique.
    pub fn is_clique(&self, set: &NodeSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.adjacency[v])
        })
    }

    /// True when no edge leaves `set`.
    pub fn is_isolated_set(&self, set: &NodeSet) -> bool {
        set.iter().all(|v| {
            let mut closed = self.adjacency[v].clone();
            closed.insert(v);
            closed.is_subset(set)
        })
    }

    /// `e` is a bridge and both endpoints have degree greater than 2.
    pub fn is_nontrivial_bridge(&self, u: NodeId, v: NodeId) -> Result<bool> {
        if !self.has_edge(u, v) {
            return Err(CoinError::UnknownEdge(u.to_string(), v.to_string()));
        }
        if self.neighbors[u].len() <= 2 || self.neighbors[v].len() <= 2 {
            return Ok(false);
        }
        let key = (u.min(v), u.max(v));
        Ok(find_bridges(self).contains(&key))
    }

    /// Copy of the graph with one edge removed.
    pub fn without_edge(&self, u: NodeId, v: NodeId) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .collect();
        Self::from_labeled_edges(self.labels.clone(), edges).0
    }

    /// Disjoint union; nodes of `other` are appended after the nodes of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.node_count();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + offset, v + offset)))
            .collect();
        Self::from_labeled_edges(labels, edges).0
    }

    pub fn connected_components(&self) -> Partition {
        connected_components(self)
    }

    pub fn maximal_cliques(&self) -> CliqueSet {
        maximal_cliques(self)
    }

    pub fn find_bridges(&self) -> Vec<(NodeId, NodeId)> {
        find_bridges(self)
    }
}

/// External labels and optional ground-truth communities of a graph's nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLabeling {
    pub labels: Vec<String>,
    /// Community id per node, contiguous from 0.
    pub ground_truth: Option<Vec<usize>>,
    /// Original community value for each normalized id.
    pub community_names: Vec<String>,
}

impl NodeLabeling {
    pub fn unlabeled(graph: &Graph) -> Self {
        Self {
            labels: graph.labels().to_vec(),
            ground_truth: None,
            community_names: Vec::new(),
        }
    }

    /// Normalizes raw community values (in node order) to contiguous ids
    /// assigned by first appearance.
    pub fn with_raw_communities(labels: Vec<String>, raw: &[String]) -> Self {
        assert_eq!(labels.len(), raw.len());
        let mut names: Vec<String> = Vec::new();
        let mut ids = HashMap::new();
        let truth = raw
            .iter()
            .map(|value| {
                *ids.entry(value.clone()).or_insert_with(|| {
                    names.push(value.clone());
                    names.len() - 1
                })
            })
            .collect();
        Self {
            labels,
            ground_truth: Some(truth),
            community_names: names,
        }
    }

    /// Attaches ground truth from a `label -> community` map. Every node of
    /// `graph` must be present.
    pub fn from_label_map(graph: &Graph, map: &HashMap<String, String>) -> Result<Self> {
        let mut raw = Vec::with_capacity(graph.node_count());
        for label in graph.labels() {
            match map.get(label) {
                Some(c) => raw.push(c.clone()),
                None => {
                    return Err(CoinError::UniverseMismatch(format!(
                        "node {label} has no ground-truth community"
                    )))
                }
            }
        }
        if let Some(extra) = map.keys().find(|l| graph.node(l).is_none()) {
            return Err(CoinError::UniverseMismatch(format!(
                "label {extra} is not a node of the graph"
            )));
        }
        Ok(Self::with_raw_communities(graph.labels().to_vec(), &raw))
    }

    pub fn num_communities(&self) -> usize {
        self.community_names.len()
    }

    /// Ground truth as a partition of the node indices.
    pub fn ground_truth_partition(&self) -> Option<Partition> {
        let truth = self.ground_truth.as_ref()?;
        let mut blocks = vec![Vec::new(); self.community_names.len()];
        for (v, &c) in truth.iter().enumerate() {
            blocks[c].push(v);
        }
        Partition::new(truth.len(), blocks).ok()
    }
}
