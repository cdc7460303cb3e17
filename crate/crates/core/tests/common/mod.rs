//! Shared fixtures and brute-force oracles. Oracles work on `u64` masks so
//! they share no code with the library.
#![allow(dead_code)]

use coin::graph::{parse_edge_list, parse_gml};
use coin::{Graph, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

pub fn toy() -> Graph {
    parse_edge_list(&data("toy.edgelist")).unwrap().graph
}

pub fn toy_star() -> Graph {
    parse_edge_list(&data("toy_star.edgelist")).unwrap().graph
}

pub fn karate() -> coin::graph::ParsedGraph {
    parse_gml(&data("karate.gml")).unwrap()
}

/// Node set from external labels.
pub fn set(g: &Graph, labels: &[&str]) -> NodeSet {
    NodeSet::from_members(g.node_count(), labels.iter().map(|l| g.node(l).unwrap()))
}

/// Sorted label lists of node sets, for readable comparisons.
pub fn label_sets<'a>(g: &Graph, sets: impl IntoIterator<Item = &'a NodeSet>) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = sets
        .into_iter()
        .map(|s| {
            let mut v: Vec<String> = s.iter().map(|x| g.label(x).to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

pub fn labels(sets: &[&[&str]]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = sets
        .iter()
        .map(|s| {
            let mut v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::with_nodes(n, &edges)
}

/// Closed neighbourhood of every node as a mask (the one-mode context rows).
pub fn closed_masks(g: &Graph) -> Vec<u64> {
    assert!(g.node_count() <= 64);
    (0..g.node_count())
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1 << u))
        .collect()
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Attributes shared by every object in `objects`.
pub fn derive(rows: &[u64], objects: u64) -> u64 {
    (0..rows.len())
        .filter(|&v| objects >> v & 1 == 1)
        .fold(full_mask(rows.len()), |m, v| m & rows[v])
}

pub fn mask_to_set(n: usize, mask: u64) -> NodeSet {
    NodeSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

pub fn set_to_mask(s: &NodeSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

/// Every maximal clique by checking all subsets.
pub fn brute_maximal_cliques(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let rows = closed_masks(g);
    let mut out = Vec::new();
    for s in 1..(1u64 << n) {
        let is_clique = (0..n).all(|v| s >> v & 1 == 0 || s & !rows[v] == 0);
        if !is_clique {
            continue;
        }
        let extendable = (0..n).any(|w| s >> w & 1 == 0 && rows[w] & s == s);
        if !extendable {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// `(stable subsets, |A|)` for a clique `a`, by checking all subsets.
pub fn brute_stability(g: &Graph, a: u64) -> (u64, u32) {
    let rows = closed_masks(g);
    let members: Vec<usize> = (0..g.node_count()).filter(|&v| a >> v & 1 == 1).collect();
    let k = members.len() as u32;
    let mut count = 0;
    for pick in 0..(1u64 << k) {
        let e = members
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(0u64, |m, (_, &v)| m | 1 << v);
        if derive(&rows, e) == a {
            count += 1;
        }
    }
    (count, k)
}

/// Nodes of `a` have no neighbour outside `a`.
pub fn brute_isolated(g: &Graph, a: u64) -> bool {
    closed_masks(g)
        .iter()
        .enumerate()
        .all(|(v, &row)| a >> v & 1 == 0 || row & !a == 0)
}
