use std::fmt::Write as _;

use crate::error::{CoinError, Result};
use crate::graph::Graph;
use crate::set::NodeSet;

/// Binary relation between objects and attributes, stored row- and
/// column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    // object -> attributes it has
    rows: Vec<NodeSet>,
    // attribute -> objects having it
    columns: Vec<NodeSet>,
}

impl FormalContext {
    /// Context from per-object attribute sets (each of width `attributes.len()`).
    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<NodeSet>) -> Self {
        assert_eq!(objects.len(), rows.len());
        let n = objects.len();
        let mut columns = vec![NodeSet::empty(n); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            assert_eq!(row.width(), attributes.len());
            for m in row.iter() {
                columns[m].insert(g);
            }
        }
        Self {
            objects,
            attributes,
            rows,
            columns,
        }
    }

    /// Context from a boolean cross table.
    pub fn from_table(objects: Vec<String>, attributes: Vec<String>, table: &[Vec<bool>]) -> Self {
        let m = attributes.len();
        let rows = table
            .iter()
            .map(|r| {
                NodeSet::from_members(m, r.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i))
            })
            .collect();
        Self::from_rows(objects, attributes, rows)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn row(&self, object: usize) -> &NodeSet {
        &self.rows[object]
    }

    pub fn column(&self, attribute: usize) -> &NodeSet {
        &self.columns[attribute]
    }

    /// Same object and attribute sets.
    pub fn is_one_mode(&self) -> bool {
        self.objects == self.attributes
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_one_mode() && self.rows == self.columns
    }

    pub fn has_full_diagonal(&self) -> bool {
        self.is_one_mode() && (0..self.objects.len()).all(|g| self.rows[g].contains(g))
    }

    /// `A′`: attributes shared by every object of `objects`. The empty set
    /// maps to all attributes.
    pub fn derive_extent(&self, objects: &NodeSet) -> NodeSet {
        let mut out = NodeSet::full(self.attributes.len());
        for g in objects.iter() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B′`: objects having every attribute of `attributes`.
    pub fn derive_intent(&self, attributes: &NodeSet) -> NodeSet {
        let mut out = NodeSet::full(self.objects.len());
        for m in attributes.iter() {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    /// `A″`.
    pub fn closure(&self, objects: &NodeSet) -> NodeSet {
        self.derive_intent(&self.derive_extent(objects))
    }

    /// `B″`.
    pub fn attribute_closure(&self, attributes: &NodeSet) -> NodeSet {
        self.derive_extent(&self.derive_intent(attributes))
    }

    /// Burmeister `.cxt` text.
    pub fn to_burmeister(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "B\n\n{}\n{}\n\n",
            self.objects.len(),
            self.attributes.len()
        );
        for name in self.objects.iter().chain(&self.attributes) {
            out.push_str(name);
            out.push('\n');
        }
        for row in &self.rows {
            for m in 0..self.attributes.len() {
                out.push(if row.contains(m) { 'X' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Reads Burmeister `.cxt` text: `B`, an optional name line, object and
    /// attribute counts, names, then one `X`/`.` row per object.
    pub fn parse_burmeister(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| CoinError::Parse {
            line,
            message: msg.to_string(),
        };
        let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
        if lines.first().map(|l| l.trim()) != Some("B") {
            return Err(err(1, "missing `B` header"));
        }
        let mut i = 1;
        let mut counts = Vec::new();
        while counts.len() < 2 {
            let line = *lines
                .get(i)
                .ok_or_else(|| err(i + 1, "missing dimensions"))?;
            let t = line.trim();
            if !t.is_empty() {
                match t.parse::<usize>() {
                    Ok(c) => counts.push(c),
                    Err(_) if counts.is_empty() && i == 1 => {} // context name
                    Err(_) => return Err(err(i + 1, "expected a count")),
                }
            }
            i += 1;
        }
        let (n, m) = (counts[0], counts[1]);
        while lines.get(i).is_some_and(|l| l.trim().is_empty()) {
            i += 1;
        }
        let take = |i: &mut usize, k: usize| -> Result<Vec<String>> {
            let mut names = Vec::with_capacity(k);
            for _ in 0..k {
                let line = lines.get(*i).ok_or_else(|| err(*i + 1, "missing name"))?;
                names.push(line.trim().to_string());
                *i += 1;
            }
            Ok(names)
        };
        let objects = take(&mut i, n)?;
        let attributes = take(&mut i, m)?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .get(i)
                .ok_or_else(|| err(i + 1, "missing cross-table row"))?
                .trim();
            if line.chars().count() != m {
                return Err(err(i + 1, "cross-table row has the wrong width"));
            }
            let mut row = NodeSet::empty(m);
            for (j, c) in line.chars().enumerate() {
                match c {
                    'X' | 'x' => row.insert(j),
                    '.' => {}
                    _ => return Err(err(i + 1, "cross-table cells must be `X` or `.`")),
                }
            }
            rows.push(row);
            i += 1;
        }
        Ok(Self::from_rows(objects, attributes, rows))
    }
}

/// One-mode context of a graph: `(g_i, g_j)` is set when the nodes are
/// adjacent or `i == j`.
pub fn build_one_mode_context(g: &Graph) -> FormalContext {
    let rows = (0..g.node_count())
        .map(|v| g.closed_neighborhood(v))
        .collect();
    let names = g.labels().to_vec();
    FormalContext::from_rows(names.clone(), names, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_graph_gives_identity() {
        let g = Graph::with_nodes(3, &[]);
        let ctx = build_one_mode_context(&g);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(ctx.incident(i, j), i == j);
            }
        }
    }

    #[test]
    fn triangle_gives_all_ones() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]);
        let ctx = build_one_mode_context(&g);
        assert!((0..3).all(|i| (0..3).all(|j| ctx.incident(i, j))));
        assert!(ctx.is_symmetric());
        assert!(ctx.has_full_diagonal());
    }

    #[test]
    fn empty_sets_derive_to_everything() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)]);
        let ctx = build_one_mode_context(&g);
        assert_eq!(ctx.derive_extent(&NodeSet::empty(4)).len(), 4);
        assert_eq!(ctx.derive_intent(&NodeSet::empty(4)).len(), 4);
        assert!(ctx.closure(&NodeSet::empty(4)).is_empty());
    }

    #[test]
    fn burmeister_round_trip() {
        let g = Graph::from_edges(&[(0, 1), (1, 2)]);
        let ctx = build_one_mode_context(&g);
        let text = ctx.to_burmeister();
        assert!(text.starts_with("B\n\n3\n3\n\n0\n1\n2\n0\n1\n2\nXX.\nXXX\n.XX\n"));
        assert_eq!(FormalContext::parse_burmeister(&text).unwrap(), ctx);
    }

    #[test]
    fn burmeister_with_name_line() {
        let text = "B\nanimals\n2\n1\n\nfrog\ndog\nswims\nX\n.\n";
        let ctx = FormalContext::parse_burmeister(text).unwrap();
        assert_eq!(ctx.objects(), &["frog", "dog"]);
        assert!(ctx.incident(0, 0));
        assert!(!ctx.incident(1, 0));
        assert!(FormalContext::parse_burmeister("B\n\n1\n2\n\na\nx\ny\nX\n").is_err());
    }
}
