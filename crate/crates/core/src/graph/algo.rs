use std::collections::VecDeque;

use super::{Graph, NodeId};
use crate::eval::Partition;
use crate::set::{sort_canonical, NodeSet};

/// Cut-edges of `g` as `(u, v)` with `u < v`, sorted.
///
/// Iterative DFS with low-link values, linear in the size of the graph.
pub fn find_bridges(g: &Graph) -> Vec<(NodeId, NodeId)> {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut bridges = Vec::new();
    // (node, parent, next neighbor position)
    let mut stack: Vec<(NodeId, NodeId, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, UNSEEN, 0));

        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if let Some(&w) = g.neighbors(v).get(pos) {
                top.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Connected components, ordered by their smallest node.
pub fn connected_components(g: &Graph) -> Partition {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut block = Vec::new();
        while let Some(v) = queue.pop_front() {
            block.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    Partition::new(n, blocks).expect("components always partition the node set")
}

/// Cliques in canonical order: size descending, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueSet {
    cliques: Vec<NodeSet>,
}

impl CliqueSet {
    pub fn new(mut cliques: Vec<NodeSet>) -> Self {
        sort_canonical(&mut cliques);
        Self { cliques }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NodeSet> {
        self.cliques.iter()
    }

    pub fn as_slice(&self) -> &[NodeSet] {
        &self.cliques
    }

    pub fn into_vec(self) -> Vec<NodeSet> {
        self.cliques
    }

    /// Member lists, for assertions and printing.
    pub fn to_vecs(&self) -> Vec<Vec<NodeId>> {
        self.cliques.iter().map(NodeSet::to_vec).collect()
    }
}

impl<'a> IntoIterator for &'a CliqueSet {
    type Item = &'a NodeSet;
    type IntoIter = std::slice::Iter<'a, NodeSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.cliques.iter()
    }
}

/// All maximal cliques (Bron–Kerbosch with pivoting). Isolated nodes come
/// out as singletons.
pub fn maximal_cliques(g: &Graph) -> CliqueSet {
    let n = g.node_count();
    let mut out = Vec::new();
    let mut current = Vec::new();
    expand(
        g,
        &mut current,
        NodeSet::full(n),
        NodeSet::empty(n),
        &mut out,
    );
    CliqueSet::new(out)
}

fn expand(
    g: &Graph,
    current: &mut Vec<NodeId>,
    mut candidates: NodeSet,
    mut excluded: NodeSet,
    out: &mut Vec<NodeSet>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() && !current.is_empty() {
            out.push(NodeSet::from_members(
                g.node_count(),
                current.iter().copied(),
            ));
        }
        return;
    }

    // pivot: vertex of P ∪ X with the most neighbors in P, lowest index on ties
    let mut pivot = None;
    let mut best = 0;
    for u in candidates.iter().chain(excluded.iter()) {
        let d = candidates.intersection_len(g.adjacency(u));
        if pivot.is_none() || d > best || (d == best && u < pivot.unwrap()) {
            pivot = Some(u);
            best = d;
        }
    }
    let pivot = pivot.expect("P is non-empty");
    let branch = candidates.difference(g.adjacency(pivot));

    for v in branch.iter() {
        current.push(v);
        expand(
            g,
            current,
            candidates.intersection(g.adjacency(v)),
            excluded.intersection(g.adjacency(v)),
            out,
        );
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}
